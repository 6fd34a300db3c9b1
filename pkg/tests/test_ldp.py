import math

import numpy as np
import pytest

from app.modules.protocol.application.ldp import (
    grr_keep_probability,
    grr_perturb,
    grr_perturb_batch,
    grr_swap_probability,
)
from app.modules.protocol.domain.entities import PrivacyParams

VALUES = np.array([1.0, 2.0, 3.0, 4.0])


def test_closed_form_probabilities():
    privacy = PrivacyParams(epsilon=1.0)
    assert privacy.per_entry_epsilon == 0.25
    assert grr_keep_probability(privacy) == pytest.approx(0.29972, abs=1e-5)
    assert grr_swap_probability(privacy) == pytest.approx(0.23343, abs=1e-5)


@pytest.mark.parametrize("epsilon", [0.01, 0.1, 1.0, 4.0, 50.0])
def test_distribution_sums_to_one(epsilon):
    privacy = PrivacyParams(epsilon=epsilon)
    total = grr_keep_probability(privacy) + 3 * grr_swap_probability(privacy)
    assert total == pytest.approx(1.0, abs=1e-15)


def test_privacy_params_require_four_entries():
    with pytest.raises(ValueError):
        PrivacyParams(domain_size=5)
    with pytest.raises(ValueError):
        PrivacyParams(epsilon=0.0)


def test_keep_frequency_matches_closed_form(rng):
    privacy = PrivacyParams(epsilon=1.0)
    out = grr_perturb_batch(VALUES, 1_000_000, privacy, rng)

    keep = (out == VALUES).mean(axis=0)
    assert keep == pytest.approx([0.29972] * 4, abs=0.002)
    # position 0 emits each other entry equally often
    for value in VALUES[1:]:
        assert (out[:, 0] == value).mean() == pytest.approx(0.23343, abs=0.002)


def test_single_draw_sampler_agrees_with_batch(rng):
    privacy = PrivacyParams(epsilon=1.0)
    draws = np.array([grr_perturb(VALUES, privacy, rng) for _ in range(20_000)])
    assert (draws == VALUES).mean() == pytest.approx(0.29972, abs=0.01)


@pytest.mark.parametrize("epsilon", [0.1, 1.0, 4.0])
def test_probability_ratio_is_bounded_by_per_entry_budget(epsilon, rng):
    """P[M(x)=y] / P[M(x')=y] stays within e^(eps/n) up to sampling error."""
    privacy = PrivacyParams(epsilon=epsilon)
    out = grr_perturb_batch(VALUES, 1_000_000, privacy, rng)
    bound = math.exp(privacy.per_entry_epsilon)
    delta = 0.05

    for y_pos in range(4):
        y = VALUES[y_pos]
        freq = np.array([(out[:, pos] == y).mean() for pos in range(4)])
        for a in range(4):
            for b in range(4):
                if a == b:
                    continue
                ratio = freq[a] / freq[b]
                assert bound ** -1 * (1 - delta) <= ratio <= bound * (1 + delta)
        # the true holder of y against any other position hits the bound itself
        others = np.delete(freq, y_pos)
        assert freq[y_pos] / others.mean() == pytest.approx(bound, rel=delta)


def test_outputs_are_drawn_from_the_input_values(rng):
    privacy = PrivacyParams(epsilon=1.0)
    for _ in range(1000):
        vector = rng.normal(size=4)
        assert set(grr_perturb(vector, privacy, rng)) <= set(vector)


def test_large_budget_is_identity(rng):
    privacy = PrivacyParams(epsilon=200.0)
    out = grr_perturb_batch(VALUES, 10_000, privacy, rng)
    assert (out == VALUES).all()


def test_constant_vector_is_unchanged(rng):
    vector = np.full(4, 2.5)
    out = grr_perturb_batch(vector, 1000, PrivacyParams(epsilon=0.5), rng)
    assert (out == 2.5).all()
