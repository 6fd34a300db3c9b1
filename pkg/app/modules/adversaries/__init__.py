"""Byzantine and inference threat models."""
