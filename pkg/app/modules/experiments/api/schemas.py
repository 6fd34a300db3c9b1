"""Experiments API schemas."""

from typing import Any

from pydantic import BaseModel, Field

from app.core.domain.value_objects import AttackKind, Scale, Variant
from app.modules.experiments.domain.entities import ParameterOverrides


class PresetResponse(BaseModel):
    """Response schema for a scale preset."""

    scale: Scale
    height: int
    width: int
    n_agents: int
    n_obstacles: int
    n_freeways: int


class RunRequest(BaseModel):
    """Request schema for a synchronous run."""

    scale: Scale = Scale.SMALL
    variant: Variant = Variant.BRNES
    attack: AttackKind = AttackKind.NONE
    attackers: float = Field(default=0.0, ge=0.0, le=1.0)
    # null selects the non-LDP baseline
    epsilon: float | None = 1.0
    episodes: int = Field(default=100, ge=1)
    seed: int = 0
    convergence_threshold: float = Field(default=0.05, gt=0.0)
    overrides: ParameterOverrides | None = None


class MetricsRow(BaseModel):
    episode: int
    sg: float
    reward: float
    delta_q_mean: float
    tg_cumulative: float
    advice_requests: int
    advice_responses: int


class InferenceRow(BaseModel):
    episode: int
    attacker_id: int
    queries_issued: int
    qualifying_states: int
    success_rate_pct: float


class RunSummary(BaseModel):
    """Final-window means and the ΔQ convergence point."""

    final_window: int
    final_sg_mean: float
    final_reward_mean: float
    convergence_episode: int | None
    total_steps: int


class RunResponse(BaseModel):
    """Response schema for a completed run."""

    scenario: dict[str, Any]
    summary: RunSummary
    metrics: list[MetricsRow]
    inference: list[InferenceRow]
