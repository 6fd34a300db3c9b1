"""Post-run analysis over metric series."""

from collections.abc import Sequence

import numpy as np
from scipy.stats import spearmanr

from app.modules.experiments.domain.entities import MetricsRecord

DEFAULT_WINDOW = 50


def moving_average(values: Sequence[float], window: int) -> np.ndarray:
    """Trailing mean over up to `window` values; shorter at the start of the series."""
    if window < 1:
        raise ValueError("window must be >= 1")
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return arr
    cumsum = np.concatenate(([0.0], np.cumsum(arr)))
    idx = np.arange(1, arr.size + 1)
    lo = np.maximum(idx - window, 0)
    return (cumsum[idx] - cumsum[lo]) / (idx - lo)


def convergence_series(records: Sequence[MetricsRecord], window: int = DEFAULT_WINDOW) -> np.ndarray:
    return moving_average([r.delta_q_mean for r in records], window)


def first_sustained_below(series: Sequence[float], threshold: float) -> int | None:
    """Index from which |series| stays below threshold to the end, if any."""
    arr = np.abs(np.asarray(series, dtype=np.float64))
    above = np.flatnonzero(arr >= threshold)
    if above.size == 0:
        return 0 if arr.size else None
    last = int(above[-1])
    return last + 1 if last + 1 < arr.size else None


def window_mean(records: Sequence[MetricsRecord], field: str, start: int, stop: int) -> float:
    """Mean of a metric over episodes start..stop inclusive (1-based)."""
    values = [getattr(r, field) for r in records if start <= r.episode <= stop]
    return float(np.mean(values)) if values else float("nan")


def final_window_mean(records: Sequence[MetricsRecord], field: str, size: int = 200) -> float:
    last = records[-1].episode
    return window_mean(records, field, last - size + 1, last)


def sg_reward_spearman(records: Sequence[MetricsRecord]) -> float:
    result = spearmanr([r.sg for r in records], [r.reward for r in records])
    return float(result.statistic)


def time_to_plateau(
    records: Sequence[MetricsRecord], sg_threshold: float, window: int = DEFAULT_WINDOW
) -> float | None:
    """Cumulative TG at the first episode whose smoothed SG reaches the threshold."""
    smoothed = moving_average([r.sg for r in records], window)
    hits = np.flatnonzero(smoothed <= sg_threshold)
    if hits.size == 0:
        return None
    return records[int(hits[0])].tg_cumulative


def aggregate_seeds(runs: Sequence[Sequence[MetricsRecord]]) -> list[dict[str, float]]:
    """Per-episode mean and standard deviation across seeds."""
    fields = ("sg", "reward", "delta_q_mean")
    n_episodes = min(len(r) for r in runs)
    rows = []
    for i in range(n_episodes):
        row: dict[str, float] = {"episode": runs[0][i].episode}
        for name in fields:
            values = np.array([getattr(run[i], name) for run in runs], dtype=np.float64)
            row[f"{name}_mean"] = float(values.mean())
            row[f"{name}_std"] = float(values.std())
        rows.append(row)
    return rows
