"""Experiments infrastructure layer."""
