"""Attack behaviours: false advice, policy reconstruction, attack scoring."""

from collections import Counter

import numpy as np
from scipy.stats import truncnorm

from app.core.domain.value_objects import Action, AgentRole, Cell
from app.core.exceptions import ProtocolViolationError
from app.modules.adversaries.domain.entities import (
    AttackSuccess,
    ByzantineConfig,
    InferenceAttackState,
)
from app.modules.agents.domain.entities import Agent, QTable
from app.modules.gridworld.domain.entities import GridConfig
from app.modules.gridworld.domain.policies import chebyshev, contains
from app.modules.protocol.domain.entities import AdviceRequest, AdviceResponse


def choose_attackers(
    n_agents: int, fraction: float, rng: np.random.Generator
) -> list[int]:
    """Fixed attacker subset of size round(fraction * n_agents)."""
    count = int(round(fraction * n_agents))
    if count == 0:
        return []
    return sorted(int(i) for i in rng.choice(n_agents, size=count, replace=False))


def misleading_actions(advisee_pos: Cell, goal: Cell, grid: GridConfig) -> list[Action]:
    """Actions that leave the advisee farthest (Chebyshev) from the goal."""
    distances = {}
    for action in Action:
        target = advisee_pos.shifted(action)
        landing = target if contains(grid, target) else advisee_pos
        distances[action] = chebyshev(landing, goal)
    worst = max(distances.values())
    return [a for a, dist in distances.items() if dist == worst]


def _noise(cfg: ByzantineConfig, phi_goal: float, rng: np.random.Generator) -> float:
    center, spread = cfg.center(phi_goal), cfg.spread(phi_goal)
    if spread == 0.0:
        return center
    lower = (0.0 - center) / spread
    return float(truncnorm.rvs(lower, np.inf, loc=center, scale=spread, random_state=rng))


def fabricate_advice(
    attacker: Agent,
    request: AdviceRequest,
    goal: Cell,
    advisee_pos: Cell,
    grid: GridConfig,
    cfg: ByzantineConfig,
    rng: np.random.Generator,
) -> AdviceResponse:
    """Shuffle own Q-values and promote the action that drives the advisee off course."""
    if attacker.role is not AgentRole.BYZANTINE:
        raise ProtocolViolationError(f"agent {attacker.id} is not Byzantine")

    candidates = misleading_actions(advisee_pos, goal, grid)
    misleading = candidates[int(rng.integers(len(candidates)))]

    vector = rng.permutation(attacker.qtable.row(request.state))
    top = int(np.argmax(vector))
    vector[[misleading, top]] = vector[[top, misleading]]
    vector[misleading] += _noise(cfg, grid.rewards.phi_goal, rng)

    # a noise draw below the value's float spacing leaves a tie with the runner-up
    runner_up = float(np.delete(vector, misleading).max())
    if vector[misleading] <= runner_up:
        vector[misleading] = np.nextafter(runner_up, np.inf)
    return AdviceResponse(advisor_id=attacker.id, q_vector=vector, perturbed=False)


def _recent_mode(values: np.ndarray) -> float:
    counts = Counter(values.tolist())
    best = max(counts.values())
    for value in reversed(values.tolist()):
        if counts[value] == best:
            return value
    return float(values[-1])


def _greedy_from_log(vectors: np.ndarray, rng: np.random.Generator | None) -> Action:
    """Argmax of the per-position modes.

    Positions tied on the largest mode are separated by their mean over the
    same vectors; GRR keeps the ordering of position means. Anything still
    tied goes to a uniform draw, or to the most recent vector without an rng.
    """
    modes = np.array([_recent_mode(vectors[:, a]) for a in range(vectors.shape[1])])
    tied = np.flatnonzero(modes == modes.max())
    if tied.size > 1:
        means = vectors[:, tied].mean(axis=0)
        tied = tied[means == means.max()]
    if tied.size == 1:
        return Action(int(tied[0]))
    if rng is not None:
        return Action(int(rng.choice(tied)))
    return Action(int(tied[int(np.argmax(vectors[-1, tied]))]))


def _log_response(
    attacker_state: InferenceAttackState, response: AdviceResponse, state: int
) -> list[np.ndarray]:
    if response.refused:
        raise ProtocolViolationError("refusals carry nothing to infer from")
    log = attacker_state.query_log.setdefault(state, [])
    log.append(np.array(response.q_vector, dtype=np.float64))
    return log


def infer_step(
    attacker_state: InferenceAttackState,
    response: AdviceResponse,
    state: int,
    window: int | None = None,
    rng: np.random.Generator | None = None,
) -> InferenceAttackState:
    """Log a received vector and re-derive the advisor's greedy action for the state.

    `window` limits the reconstruction to the most recent logged vectors; None
    uses the whole log.
    """
    log = _log_response(attacker_state, response, state)
    recent = log if window is None else log[-window:]
    attacker_state.reconstructed[state] = _greedy_from_log(np.vstack(recent), rng)
    return attacker_state


def infer_round(
    attacker_state: InferenceAttackState,
    responses: list[AdviceResponse],
    state: int,
    rng: np.random.Generator | None = None,
) -> InferenceAttackState:
    """Log one request round and reconstruct the state from that round alone.

    Earlier rounds stay in the log, but the advisor may have updated the row
    since, so only vectors drawn from the same row are pooled.
    """
    if not responses:
        return attacker_state
    for response in responses[:-1]:
        _log_response(attacker_state, response, state)
    return infer_step(attacker_state, responses[-1], state, window=len(responses), rng=rng)


def observed_truth(attacker_state: InferenceAttackState, n_states: int) -> QTable:
    """Advisor table as it stood at each state's latest answered round."""
    table = QTable.zeros(n_states)
    for state, row in attacker_state.observed_rows.items():
        table.values[state] = row
    return table


def attack_success_rate(
    attacker_state: InferenceAttackState, advisor_truth: QTable
) -> AttackSuccess:
    """Share of logged states with a unique true greedy action that were recovered."""
    qualifying = 0
    recovered = 0
    for state, guess in attacker_state.reconstructed.items():
        greedy = advisor_truth.greedy_actions(state)
        if len(greedy) != 1:
            continue
        qualifying += 1
        if int(greedy[0]) == int(guess):
            recovered += 1
    if qualifying == 0:
        return AttackSuccess(rate_pct=0.0, qualifying_states=0, insufficient_data=True)
    return AttackSuccess(rate_pct=100.0 * recovered / qualifying, qualifying_states=qualifying)
