"""Protocol application layer."""
