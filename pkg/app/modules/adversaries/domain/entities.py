"""Adversary domain entities."""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.core.domain.value_objects import Action


class ByzantineConfig(BaseModel):
    """False-advice noise; centre and spread default to phi_goal and 0.1 * phi_goal."""

    model_config = ConfigDict(frozen=True)

    fraction: float = Field(default=0.0, ge=0.0, le=1.0)
    noise_center: float | None = Field(default=None, gt=0.0)
    noise_spread: float | None = Field(default=None, ge=0.0)

    def center(self, phi_goal: float) -> float:
        return self.noise_center if self.noise_center is not None else phi_goal

    def spread(self, phi_goal: float) -> float:
        return self.noise_spread if self.noise_spread is not None else 0.1 * phi_goal


@dataclass
class InferenceAttackState:
    """What one inference attacker has learned about one advisor."""

    attacker_id: int
    target_advisor: int
    query_log: dict[int, list[np.ndarray]] = field(default_factory=dict)
    reconstructed: dict[int, Action] = field(default_factory=dict)
    queries_issued: int = 0
    # scoring only: the advisor's true row when it last answered, never read by the attacker
    observed_rows: dict[int, np.ndarray] = field(default_factory=dict)


@dataclass(frozen=True)
class AttackSuccess:
    rate_pct: float
    qualifying_states: int
    insufficient_data: bool = False
