"""Experience-sharing protocol: harvesting, giving, privacy."""
