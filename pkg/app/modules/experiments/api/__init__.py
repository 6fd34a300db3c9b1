"""Experiments API layer."""
