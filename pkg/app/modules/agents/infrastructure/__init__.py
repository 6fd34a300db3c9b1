"""Agents infrastructure layer."""
