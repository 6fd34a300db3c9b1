"""Experiments domain entities."""

from dataclasses import dataclass, field
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.domain.value_objects import AttackKind, Scale, StepCapRule, Variant
from app.modules.adversaries.domain.entities import ByzantineConfig
from app.modules.agents.domain.entities import Agent, AgentParams, BudgetTotals
from app.modules.experiments.domain.presets import PRESETS
from app.modules.gridworld.domain.entities import GridConfig, RewardTable
from app.modules.protocol.domain.entities import ProtocolOptions

DEFAULT_EPISODES = 1000
INFERENCE_EPISODES = 3000


class ScenarioConfig(BaseModel):
    """Everything that determines one run, seed included."""

    model_config = ConfigDict(frozen=True)

    scale: Scale = Scale.MEDIUM
    grid: GridConfig = Field(default_factory=GridConfig)
    episodes: int = Field(default=DEFAULT_EPISODES, ge=1)
    variant: Variant = Variant.BRNES
    attacker_fraction: float = Field(default=0.0, ge=0.0, le=1.0)
    attacker_kind: AttackKind = AttackKind.NONE
    # None disables perturbation (non-LDP baseline)
    privacy_epsilon: float | None = Field(default=1.0, gt=0.0)
    master_seed: int = 0
    params: AgentParams = Field(default_factory=AgentParams)
    budgets: BudgetTotals = Field(default_factory=BudgetTotals)
    byzantine_noise_center: float | None = Field(default=None, gt=0.0)
    byzantine_noise_spread: float | None = Field(default=None, ge=0.0)
    options: ProtocolOptions = Field(default_factory=ProtocolOptions)
    tg_clock: Literal["wall", "null"] = "wall"

    @model_validator(mode="after")
    def _check_consistency(self) -> "ScenarioConfig":
        if self.attacker_kind is AttackKind.NONE and self.attacker_fraction > 0:
            raise ValueError("attacker_fraction > 0 needs an attacker_kind")
        preset = PRESETS.get(self.scale)
        if preset is not None:
            actual = (self.grid.height, self.grid.width, self.grid.n_agents, self.grid.n_obstacles)
            expected = (preset.height, preset.width, preset.n_agents, preset.n_obstacles)
            if actual != expected:
                raise ValueError(
                    f"{self.scale.value} preset expects H, W, agents, obstacles = {expected}, got {actual}"
                )
        return self

    @classmethod
    def from_preset(
        cls,
        scale: Scale,
        rewards: RewardTable | None = None,
        step_cap_rule: StepCapRule = StepCapRule.CELLS,
        **fields: Any,
    ) -> "ScenarioConfig":
        preset = PRESETS[scale]
        grid = GridConfig(
            height=preset.height,
            width=preset.width,
            n_agents=preset.n_agents,
            n_obstacles=preset.n_obstacles,
            n_freeways=preset.n_freeways,
            step_cap_rule=step_cap_rule,
            rewards=rewards or RewardTable(),
        )
        if fields.get("episodes") is None:
            kind = AttackKind(fields.get("attacker_kind", AttackKind.NONE))
            fields["episodes"] = (
                INFERENCE_EPISODES if kind is AttackKind.INFERENCE else DEFAULT_EPISODES
            )
        return cls(scale=scale, grid=grid, **fields)

    def byzantine_config(self) -> ByzantineConfig:
        fraction = self.attacker_fraction if self.attacker_kind is AttackKind.BYZANTINE else 0.0
        return ByzantineConfig(
            fraction=fraction,
            noise_center=self.byzantine_noise_center,
            noise_spread=self.byzantine_noise_spread,
        )


class ParameterOverrides(BaseModel):
    """Table-style parameter overrides read from a config file."""

    model_config = ConfigDict(extra="forbid")

    alpha: float | None = None
    epsilon_explore: float | None = None
    gamma: float | None = None
    w: float | None = None
    kappa: float | None = None
    tau: int | None = None
    tau_prime: int | None = None
    phi_goal: float | None = None
    phi_freeway: float | None = None
    phi_obstacle: float | None = None
    phi_wall: float | None = None
    privacy_epsilon: float | None = None
    budget_advisee: int | None = None
    budget_advisor: int | None = None


@dataclass(frozen=True)
class MetricsRecord:
    episode: int
    sg: float
    reward: float
    delta_q_mean: float
    tg_cumulative: float
    advice_requests: int
    advice_responses: int


@dataclass(frozen=True)
class HeatmapRecord:
    x: int
    y: int
    visit_count: int


@dataclass(frozen=True)
class InferenceRecord:
    episode: int
    attacker_id: int
    queries_issued: int
    qualifying_states: int
    success_rate_pct: float


@dataclass
class RunResult:
    config: ScenarioConfig
    records: list[MetricsRecord] = field(default_factory=list)
    heatmap: list[HeatmapRecord] = field(default_factory=list)
    inference: list[InferenceRecord] = field(default_factory=list)
    agents: list[Agent] = field(default_factory=list)

    @property
    def total_steps(self) -> int:
        return sum(cell.visit_count for cell in self.heatmap)
