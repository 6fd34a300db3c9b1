"""Gridworld application layer."""
