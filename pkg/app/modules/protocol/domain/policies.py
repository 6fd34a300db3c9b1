"""Confidence gates, neighbor zone and advice aggregation."""

import math
from collections.abc import Sequence

import numpy as np

from app.core.domain.value_objects import N_ACTIONS, Cell, GateMode
from app.core.exceptions import ConfigurationError, NumericError, ProtocolViolationError
from app.modules.gridworld.domain.entities import GridConfig
from app.modules.protocol.domain.entities import NeighborZone, clipped_zone


def ehc(visits: int, budget: int, budget_total: int, tau: int, tau_prime: int) -> float:
    """Experience harvesting confidence P^a."""
    if not (tau <= visits <= tau_prime):
        return 0.0
    return (1.0 / math.sqrt(visits)) * math.sqrt(budget / budget_total)


def egc(advisor_visits: int, advisee_visits: int, budget: int, budget_total: int) -> float:
    """Experience giving confidence P^g."""
    if advisor_visits <= advisee_visits:
        return 0.0
    return 1.0 - (1.0 / math.sqrt(advisor_visits)) * math.sqrt(budget / budget_total)


def seeks_advice(
    p_harvest: float, kappa: float, mode: GateMode, rng: np.random.Generator | None = None
) -> bool:
    if mode is GateMode.BERNOULLI:
        return p_harvest > 0.0 and rng.random() < p_harvest
    return 0.0 < p_harvest < kappa


def gives_advice(
    p_give: float, mode: GateMode, rng: np.random.Generator | None = None
) -> bool:
    if mode is GateMode.BERNOULLI:
        return p_give > 0.0 and rng.random() < p_give
    return p_give > 0.0


def zone_radius(n_agents: int, grid: GridConfig) -> float:
    if n_agents < 1:
        raise ConfigurationError("neighbor zone needs at least one agent")
    return math.sqrt(grid.n_cells / n_agents)


def neighbor_zone(n_agents: int, advisee_pos: Cell, grid: GridConfig) -> NeighborZone:
    return clipped_zone(advisee_pos, zone_radius(n_agents, grid), grid.width, grid.height)


def whole_grid_zone(advisee_pos: Cell, grid: GridConfig) -> NeighborZone:
    """Zone covering every cell, used by ablations without zoning."""
    return clipped_zone(advisee_pos, float(max(grid.width, grid.height)), grid.width, grid.height)


def best_advice(responses: Sequence[np.ndarray]) -> np.ndarray:
    """Per-action mean of the received advice vectors."""
    if len(responses) == 0:
        raise ProtocolViolationError("best advice needs at least one response")
    stacked = np.vstack(responses)
    if stacked.shape[1] != N_ACTIONS:
        raise ProtocolViolationError(f"advice vectors must have {N_ACTIONS} entries")
    if not np.all(np.isfinite(stacked)):
        raise NumericError("advice vectors must be finite")
    return stacked.mean(axis=0)


def weighted_aggregate(own: np.ndarray, advice: np.ndarray, w: float) -> np.ndarray:
    return w * own + (1.0 - w) * advice
