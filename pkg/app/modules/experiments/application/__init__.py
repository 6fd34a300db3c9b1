"""Experiments application layer."""
