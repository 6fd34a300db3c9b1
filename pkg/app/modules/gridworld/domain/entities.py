"""Gridworld domain entities."""

from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.domain.value_objects import Cell, StepCapRule

_DEFAULT_HEIGHT = 10
_DEFAULT_WIDTH = 10
_STEPS_PER_UNIT = 100


class RewardTable(BaseModel):
    """Reward components of the grid game."""

    model_config = ConfigDict(frozen=True)

    phi_goal: float = 10.0
    phi_freeway: float = 0.50
    phi_obstacle: float = -1.50
    phi_wall: float = -0.50

    @model_validator(mode="after")
    def _check_signs(self) -> "RewardTable":
        if self.phi_goal <= self.phi_freeway:
            raise ValueError("phi_goal must exceed phi_freeway")
        if self.phi_obstacle >= 0 or self.phi_wall >= 0:
            raise ValueError("phi_obstacle and phi_wall must be negative")
        return self

    @property
    def max_episode_reward(self) -> float:
        """Best achievable episode reward: freeway plus goal, no penalties."""
        return self.phi_goal + self.phi_freeway


class GridConfig(BaseModel):
    """Static description of one H x W environment."""

    model_config = ConfigDict(frozen=True)

    height: int = Field(default=_DEFAULT_HEIGHT, ge=2)
    width: int = Field(default=_DEFAULT_WIDTH, ge=2)
    n_agents: int = Field(default=10, ge=1)
    n_obstacles: int = Field(default=3, ge=0)
    n_freeways: int = Field(default=1, ge=0, le=1)
    goal: Cell
    step_cap_rule: StepCapRule = StepCapRule.CELLS
    step_cap: int = Field(gt=0)
    rewards: RewardTable = Field(default_factory=RewardTable)

    @model_validator(mode="before")
    @classmethod
    def _fill_derived(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        height = int(data.get("height", _DEFAULT_HEIGHT))
        width = int(data.get("width", _DEFAULT_WIDTH))
        if data.get("goal") is None:
            data["goal"] = Cell(width - 1, height - 1)
        if data.get("step_cap") is None:
            rule = StepCapRule(data.get("step_cap_rule", StepCapRule.CELLS))
            unit = height * width if rule is StepCapRule.CELLS else max(height, width)
            data["step_cap"] = unit * _STEPS_PER_UNIT
        return data

    @model_validator(mode="after")
    def _check_goal(self) -> "GridConfig":
        if not (0 <= self.goal.x < self.width and 0 <= self.goal.y < self.height):
            raise ValueError(f"goal {tuple(self.goal)} lies outside the grid")
        return self

    @property
    def n_cells(self) -> int:
        return self.height * self.width


@dataclass
class EnvState:
    """World snapshot for one episode."""

    agent_pos: list[Cell]
    agent_active: list[bool]
    obstacle_pos: list[Cell]
    freeway_pos: Cell | None
    freeway_collected: list[bool] = field(default_factory=list)
    step_index: int = 0

    def all_inactive(self) -> bool:
        return not any(self.agent_active)


@dataclass(frozen=True)
class StepOutcome:
    """Result of one agent's move."""

    next_pos: Cell
    reward: float
    reached_goal: bool = False
    hit_wall: bool = False
    hit_obstacle: bool = False
    collected_freeway: bool = False
