"""Q-learning operations: epsilon-greedy selection, update rule, visit ledger."""

import math

import numpy as np

from app.core.domain.value_objects import N_ACTIONS, Action
from app.core.exceptions import NumericError
from app.modules.agents.domain.entities import AgentLedger, AgentParams, QTable


def select_action(
    q: QTable, state: int, params: AgentParams, rng: np.random.Generator
) -> Action:
    """Explore uniformly with probability epsilon, else act greedily with random tie-break."""
    if rng.random() < params.epsilon_explore:
        return Action(int(rng.integers(N_ACTIONS)))
    maximizers = q.greedy_actions(state)
    if len(maximizers) == 1:
        return Action(int(maximizers[0]))
    return Action(int(rng.choice(maximizers)))


def q_update(
    q: QTable,
    state: int,
    action: Action,
    reward: float,
    next_state: int,
    params: AgentParams,
) -> float:
    """Apply Q(s,a) <- (1-a)Q(s,a) + a(r + g max Q(s',.)) in place; return the change."""
    if not math.isfinite(reward):
        raise NumericError(f"reward {reward!r} is not finite")
    old = q.values[state, action]
    target = reward + params.gamma * q.values[next_state].max()
    new = (1.0 - params.alpha) * old + params.alpha * target
    q.values[state, action] = new
    return float(new - old)


def record_visit(ledger: AgentLedger, state: int) -> None:
    ledger.visit_count[state] += 1
