"""Agents domain layer."""
