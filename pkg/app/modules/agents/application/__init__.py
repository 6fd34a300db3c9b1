"""Agents application layer."""
