"""Adversaries application layer."""
