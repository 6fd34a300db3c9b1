"""Experiments domain layer."""
