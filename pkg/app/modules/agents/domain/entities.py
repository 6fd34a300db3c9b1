"""Agent domain entities: Q-table, learning parameters and ledgers."""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.domain.value_objects import N_ACTIONS, AgentRole


class AgentParams(BaseModel):
    """Learning and advising parameters shared by every agent."""

    model_config = ConfigDict(frozen=True)

    # alpha = 0 is accepted for degenerate no-learning checks
    alpha: float = Field(default=0.10, ge=0.0, le=1.0)
    epsilon_explore: float = Field(default=0.08, ge=0.0, le=1.0)
    gamma: float = Field(default=0.80, ge=0.0, le=1.0)
    w: float = Field(default=0.85, ge=0.0, le=1.0)
    kappa: float = Field(default=0.1, gt=0.0)
    tau: int = Field(default=100, ge=1)
    tau_prime: int = Field(default=100_000, ge=1)

    @model_validator(mode="after")
    def _check_thresholds(self) -> "AgentParams":
        if self.tau > self.tau_prime:
            raise ValueError("tau must not exceed tau_prime")
        return self


class BudgetTotals(BaseModel):
    """Total communication budgets per agent and run."""

    model_config = ConfigDict(frozen=True)

    advisee: int = Field(default=100_000, ge=1)
    advisor: int = Field(default=10_000, ge=1)


@dataclass
class QTable:
    """Dense state x action value table in canonical action order."""

    values: np.ndarray

    @classmethod
    def zeros(cls, n_states: int) -> "QTable":
        return cls(values=np.zeros((n_states, N_ACTIONS), dtype=np.float64))

    @property
    def n_states(self) -> int:
        return self.values.shape[0]

    def row(self, state: int) -> np.ndarray:
        return self.values[state]

    def greedy_actions(self, state: int) -> np.ndarray:
        row = self.values[state]
        return np.flatnonzero(row == row.max())


@dataclass
class AgentLedger:
    """Visit counts and remaining communication budgets."""

    visit_count: np.ndarray
    advisee_budget: int
    advisor_budget: int

    @classmethod
    def fresh(cls, n_states: int, budgets: BudgetTotals) -> "AgentLedger":
        return cls(
            visit_count=np.zeros(n_states, dtype=np.int64),
            advisee_budget=budgets.advisee,
            advisor_budget=budgets.advisor,
        )

    def visits(self, state: int) -> int:
        return int(self.visit_count[state])

    def spend_advisee(self) -> None:
        self.advisee_budget = max(self.advisee_budget - 1, 0)

    def spend_advisor(self) -> None:
        self.advisor_budget = max(self.advisor_budget - 1, 0)


@dataclass
class Agent:
    """One learner in the run, with its role and private knowledge."""

    id: int
    role: AgentRole
    qtable: QTable
    ledger: AgentLedger
    targets: list[int] = field(default_factory=list)

    @property
    def is_honest(self) -> bool:
        return self.role is AgentRole.HONEST
