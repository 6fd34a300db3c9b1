"""Experiment harness: scenarios, runs, metrics and artifacts."""
