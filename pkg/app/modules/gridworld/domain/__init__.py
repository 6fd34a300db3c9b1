"""Gridworld domain layer."""
