"""Protocol domain layer."""
