"""Protocol domain entities: wire types, privacy and zone descriptions."""

import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.domain.value_objects import (
    N_ACTIONS,
    Action,
    Cell,
    EgcBudgetRule,
    GateMode,
    InferenceScoring,
    InferenceTargets,
)


class PrivacyParams(BaseModel):
    """GRR privacy budget; the vector budget is split evenly over its entries."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(default=1.0, gt=0.0)
    n_sensitivity: int = N_ACTIONS
    domain_size: int = N_ACTIONS

    @model_validator(mode="after")
    def _check_sizes(self) -> "PrivacyParams":
        if not (self.n_sensitivity == self.domain_size == N_ACTIONS):
            raise ValueError(
                f"n_sensitivity and domain_size must both equal {N_ACTIONS}"
            )
        return self

    @property
    def per_entry_epsilon(self) -> float:
        return self.epsilon / self.n_sensitivity


class ProtocolOptions(BaseModel):
    """Sensitivity switches around the literal protocol."""

    model_config = ConfigDict(frozen=True)

    gate_mode: GateMode = GateMode.DETERMINISTIC
    egc_budget_rule: EgcBudgetRule = EgcBudgetRule.REFUSE_WHEN_EXHAUSTED
    inactive_agents_advise: bool = True
    inference_targets: InferenceTargets = InferenceTargets.DESIGNATED
    # repeated queries per request round; the advisor's row is fixed within a round
    inference_queries: int = Field(default=50, ge=1)
    # skip the attacker's own harvesting gate and report zero visits
    inference_bypass_ehc: bool = False
    inference_scoring: InferenceScoring = InferenceScoring.OBSERVED


@dataclass(frozen=True)
class SharingPolicy:
    """Defenses active in a run, resolved from the protocol variant."""

    privacy: PrivacyParams | None
    zone_enabled: bool
    weight: float

    @property
    def ldp_enabled(self) -> bool:
        return self.privacy is not None


@dataclass(frozen=True)
class AdviceRequest:
    state: int
    advisee_visits: int
    advisee_id: int


@dataclass(frozen=True)
class AdviceResponse:
    """A (possibly perturbed) Q-vector, or a refusal when q_vector is None."""

    advisor_id: int
    q_vector: np.ndarray | None = None
    perturbed: bool = False

    @classmethod
    def refusal(cls, advisor_id: int) -> "AdviceResponse":
        return cls(advisor_id=advisor_id)

    @property
    def refused(self) -> bool:
        return self.q_vector is None


@dataclass(frozen=True)
class NeighborZone:
    """Box of half-width radius around the advisee, clipped to the grid."""

    center: Cell
    radius: float
    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def contains(self, cell: Cell) -> bool:
        return (
            abs(cell.x - self.center.x) <= self.radius
            and abs(cell.y - self.center.y) <= self.radius
        )


def clipped_zone(center: Cell, radius: float, width: int, height: int) -> NeighborZone:
    return NeighborZone(
        center=center,
        radius=radius,
        x_min=max(0, math.ceil(center.x - radius)),
        x_max=min(width - 1, math.floor(center.x + radius)),
        y_min=max(0, math.ceil(center.y - radius)),
        y_max=min(height - 1, math.floor(center.y + radius)),
    )


@dataclass(frozen=True)
class HarvestResult:
    """What one harvesting step did before the environment moved."""

    state: int
    action: Action
    requested: bool = False
    responses: int = 0
    aggregated: bool = False
