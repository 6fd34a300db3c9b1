"""Grid-world Markov game."""
