"""Full-length experiment checks. Run with `pytest -m slow`."""

import numpy as np
import pytest

from app.core.domain.value_objects import AttackKind, Scale, Variant
from app.modules.experiments.application.analysis import (
    convergence_series,
    final_window_mean,
    first_sustained_below,
    sg_reward_spearman,
    time_to_plateau,
    window_mean,
)
from app.modules.experiments.application.runner import run_scenario
from app.modules.experiments.domain.policies import build_scenario

pytestmark = pytest.mark.slow

SEEDS = range(10)
DQ_THRESHOLD = 0.05


def _medium(**fields):
    fields.setdefault("tg_clock", "null")
    return build_scenario(scale=Scale.MEDIUM, **fields)


def _final(records, field="sg"):
    return final_window_mean(records, field, 200)


def _settles_at(records) -> int:
    """Episode from which smoothed |dQ| stays under the threshold; past the run if never."""
    index = first_sustained_below(convergence_series(records), DQ_THRESHOLD)
    return len(records) + 1 if index is None else index + 1


def _byzantine(fraction, variant, seed, **fields):
    return _medium(
        variant=variant,
        attacker_kind=AttackKind.BYZANTINE,
        attacker_fraction=fraction,
        master_seed=seed,
        **fields,
    )


@pytest.fixture(scope="module")
def clean_runs():
    """BRNES without attackers, ten seeds."""
    return [run_scenario(_medium(master_seed=seed)) for seed in SEEDS]


@pytest.fixture(scope="module")
def byzantine_runs():
    """30% and 40% Byzantine, every variant, ten seeds, wall clock."""
    return {
        fraction: {
            variant: [
                run_scenario(_byzantine(fraction, variant, seed, tg_clock="wall")).records
                for seed in SEEDS
            ]
            for variant in Variant
        }
        for fraction in (0.3, 0.4)
    }


def test_sg_drops_below_a_quarter_without_attackers(clean_runs):
    early = np.mean([window_mean(run.records, "sg", 1, 50) for run in clean_runs])
    late = np.mean([window_mean(run.records, "sg", 800, 1000) for run in clean_runs])
    assert late < 0.25 * early


def test_reward_plateaus_near_the_episode_maximum(clean_runs):
    best = clean_runs[0].config.grid.rewards.max_episode_reward
    late = np.mean([window_mean(run.records, "reward", 800, 1000) for run in clean_runs])
    assert 0.8 * best <= late <= best


def test_sg_and_reward_are_anti_correlated(clean_runs):
    assert all(sg_reward_spearman(run.records) < 0 for run in clean_runs)


@pytest.mark.parametrize("fraction", [0.3, 0.4])
def test_variant_ordering_under_attack(byzantine_runs, fraction):
    runs = byzantine_runs[fraction]
    sg = {variant: np.mean([_final(r) for r in runs[variant]]) for variant in Variant}

    assert sg[Variant.BRNES] < sg[Variant.LDP_ONLY] < sg[Variant.NO_DEFENSE]
    assert sg[Variant.BRNES] < 0.7 * sg[Variant.NO_DEFENSE]


def test_dq_settles_by_episode_400_under_attack(byzantine_runs):
    assert _settles_at(byzantine_runs[0.3][Variant.BRNES][0]) <= 400


def test_weaker_privacy_settles_no_later(byzantine_runs):
    weak = [_settles_at(r) for r in byzantine_runs[0.3][Variant.BRNES]]
    strong = [
        _settles_at(run_scenario(_byzantine(0.3, Variant.BRNES, seed, privacy_epsilon=0.01)).records)
        for seed in SEEDS
    ]
    assert sum(w <= s for w, s in zip(weak, strong, strict=True)) >= 7


def test_time_to_plateau_ordering(byzantine_runs):
    runs = byzantine_runs[0.3]
    target = 1.2 * np.mean([_final(r) for r in runs[Variant.BRNES]])

    def mean_tg(variant):
        times = []
        for records in runs[variant]:
            tg = time_to_plateau(records, target)
            times.append(records[-1].tg_cumulative if tg is None else tg)
        return np.mean(times)

    assert mean_tg(Variant.BRNES) < mean_tg(Variant.LDP_ONLY) < mean_tg(Variant.NO_DEFENSE)


def _inference_success(variant, epsilon):
    rates = []
    for seed in SEEDS:
        cfg = _medium(
            variant=variant,
            attacker_kind=AttackKind.INFERENCE,
            attacker_fraction=0.1,
            privacy_epsilon=epsilon,
            master_seed=seed,
        )
        rates.append(run_scenario(cfg).inference[-1].success_rate_pct)
    return float(np.mean(rates))


def test_inference_attack_and_privacy_ladder():
    exposed = _inference_success(Variant.NO_DEFENSE, None)
    ladder = [_inference_success(Variant.LDP_ONLY, eps) for eps in (1.0, 0.5, 0.1)]

    assert exposed >= 60.0
    assert ladder[0] > ladder[1] > ladder[2]
    assert all(rate < exposed for rate in ladder)
