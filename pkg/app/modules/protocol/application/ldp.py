"""Generalized randomized response over the entries of one Q-vector.

Each entry is kept with probability p = e^(eps/n) / (d + e^(eps/n) - 1)
and otherwise replaced by the value at one of the other d - 1 positions,
chosen uniformly. Per-entry budgets of eps/n compose to eps over the
vector. Outputs only ever contain values already present in the input.
"""

import math

import numpy as np

from app.modules.protocol.domain.entities import PrivacyParams


def grr_keep_probability(privacy: PrivacyParams) -> float:
    e = math.exp(privacy.per_entry_epsilon)
    return e / (privacy.domain_size + e - 1.0)


def grr_swap_probability(privacy: PrivacyParams) -> float:
    """Probability of emitting one specific alternative position."""
    e = math.exp(privacy.per_entry_epsilon)
    return 1.0 / (privacy.domain_size + e - 1.0)


def grr_perturb(
    q_vector: np.ndarray, privacy: PrivacyParams, rng: np.random.Generator
) -> np.ndarray:
    d = privacy.domain_size
    keep = rng.random(d) <= grr_keep_probability(privacy)
    offsets = rng.integers(1, d, size=d)
    source = (np.arange(d) + offsets) % d
    return np.where(keep, q_vector, q_vector[source])


def grr_perturb_batch(
    q_vector: np.ndarray, n_trials: int, privacy: PrivacyParams, rng: np.random.Generator
) -> np.ndarray:
    """n_trials independent perturbations of one vector, shape (n_trials, d)."""
    d = privacy.domain_size
    keep = rng.random((n_trials, d)) <= grr_keep_probability(privacy)
    offsets = rng.integers(1, d, size=(n_trials, d))
    source = (np.arange(d) + offsets) % d
    return np.where(keep, q_vector, q_vector[source])
