"""Protocol infrastructure layer."""
