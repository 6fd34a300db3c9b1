"""Shared test fixtures."""

from collections.abc import Callable

import numpy as np
import pytest
from fastapi.testclient import TestClient

from app.core.domain.rng import RngStreams
from app.core.domain.value_objects import AgentRole
from app.core.middleware.rate_limit import limiter
from app.main import app
from app.modules.agents.domain.entities import Agent, AgentLedger, BudgetTotals, QTable
from app.modules.gridworld.domain.entities import GridConfig


@pytest.fixture
def client():
    """API client with a fresh rate-limit window."""
    limiter.reset()
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def rngs() -> RngStreams:
    return RngStreams(7)


@pytest.fixture
def small_grid() -> GridConfig:
    return GridConfig(height=5, width=5, n_agents=5, n_obstacles=1)


@pytest.fixture
def medium_grid() -> GridConfig:
    return GridConfig(height=10, width=10, n_agents=10, n_obstacles=3)


@pytest.fixture
def make_agent() -> Callable[..., Agent]:
    """Factory for agents on an arbitrary-size state space."""

    def _make(
        agent_id: int,
        n_states: int = 100,
        role: AgentRole = AgentRole.HONEST,
        budgets: BudgetTotals | None = None,
    ) -> Agent:
        return Agent(
            id=agent_id,
            role=role,
            qtable=QTable.zeros(n_states),
            ledger=AgentLedger.fresh(n_states, budgets or BudgetTotals()),
        )

    return _make
