"""Tabular Q-learning agents."""
