"""Adversaries domain layer."""
