"""Gridworld application services."""

import dataclasses

import numpy as np

from app.core.domain.value_objects import Action
from app.core.exceptions import ProtocolViolationError
from app.modules.gridworld.domain.entities import EnvState, GridConfig, StepOutcome
from app.modules.gridworld.domain.policies import (
    contains,
    ensure_occupancy,
    non_goal_cells,
    reward_of,
)


class GridWorld:
    """The H x W grid Markov game: initialization, obstacle motion, moves, rewards."""

    def __init__(self, config: GridConfig) -> None:
        ensure_occupancy(config)
        self.config = config
        self._free_cells = non_goal_cells(config)

    def reset(self, rng: np.random.Generator) -> EnvState:
        """Draw agents, obstacles and freeway without replacement from non-goal cells."""
        cfg = self.config
        n_draw = cfg.n_agents + cfg.n_obstacles + cfg.n_freeways
        picks = rng.choice(len(self._free_cells), size=n_draw, replace=False)
        cells = [self._free_cells[int(i)] for i in picks]

        agents = cells[: cfg.n_agents]
        obstacles = cells[cfg.n_agents : cfg.n_agents + cfg.n_obstacles]
        freeway = cells[-1] if cfg.n_freeways else None
        return EnvState(
            agent_pos=agents,
            agent_active=[True] * cfg.n_agents,
            obstacle_pos=obstacles,
            freeway_pos=freeway,
            freeway_collected=[False] * cfg.n_agents,
            step_index=0,
        )

    def move_obstacles(self, state: EnvState, rng: np.random.Generator) -> EnvState:
        """Relocate every obstacle to a uniformly random non-goal cell."""
        if not state.obstacle_pos:
            return state
        picks = rng.integers(0, len(self._free_cells), size=len(state.obstacle_pos))
        return dataclasses.replace(
            state, obstacle_pos=[self._free_cells[int(i)] for i in picks]
        )

    def step(self, state: EnvState, agent_id: int, action: Action) -> StepOutcome:
        """Move one agent and apply the reward components its transition triggers."""
        if not state.agent_active[agent_id]:
            raise ProtocolViolationError(f"agent {agent_id} already reached the goal")

        current = state.agent_pos[agent_id]
        target = current.shifted(action)
        if not contains(self.config, target):
            outcome = StepOutcome(next_pos=current, reward=0.0, hit_wall=True)
            return dataclasses.replace(
                outcome, reward=reward_of(outcome, self.config.rewards)
            )

        hit_obstacle = target in state.obstacle_pos
        collected = (
            state.freeway_pos is not None
            and target == state.freeway_pos
            and not state.freeway_collected[agent_id]
        )
        reached = target == self.config.goal

        state.agent_pos[agent_id] = target
        if collected:
            state.freeway_collected[agent_id] = True
        if reached:
            state.agent_active[agent_id] = False

        outcome = StepOutcome(
            next_pos=target,
            reward=0.0,
            reached_goal=reached,
            hit_obstacle=hit_obstacle,
            collected_freeway=collected,
        )
        return dataclasses.replace(outcome, reward=reward_of(outcome, self.config.rewards))

    def advance(self, state: EnvState) -> None:
        """Count one elapsed environment step."""
        state.step_index += 1

    def episode_done(self, state: EnvState) -> bool:
        return state.all_inactive() or state.step_index >= self.config.step_cap
