import numpy as np
import pytest

from app.core.domain.value_objects import Action, Cell, StepCapRule
from app.core.exceptions import ConfigurationError, ProtocolViolationError
from app.modules.gridworld.application.services import GridWorld
from app.modules.gridworld.domain.entities import EnvState, GridConfig, RewardTable
from app.modules.gridworld.domain.policies import cell_of, state_id


def _state(agents, obstacles=(), freeway=None) -> EnvState:
    return EnvState(
        agent_pos=list(agents),
        agent_active=[True] * len(agents),
        obstacle_pos=list(obstacles),
        freeway_pos=freeway,
        freeway_collected=[False] * len(agents),
    )


def test_reset_places_distinct_non_goal_cells(small_grid):
    world = GridWorld(small_grid)
    state = world.reset(np.random.default_rng(0))

    occupied = [*state.agent_pos, *state.obstacle_pos, state.freeway_pos]
    assert len(occupied) == 7
    assert len(set(occupied)) == 7
    assert small_grid.goal not in occupied
    assert state.step_index == 0
    assert all(state.agent_active)
    assert not any(state.freeway_collected)


def test_reset_is_deterministic_under_seed(small_grid):
    world = GridWorld(small_grid)
    assert world.reset(np.random.default_rng(3)) == world.reset(np.random.default_rng(3))


def test_overcrowded_grid_is_rejected():
    with pytest.raises(ConfigurationError):
        GridWorld(GridConfig(height=2, width=2, n_agents=4, n_obstacles=1))


def test_default_goal_and_step_cap():
    cfg = GridConfig(height=10, width=10)
    assert cfg.goal == Cell(9, 9)
    assert cfg.step_cap == 10_000
    assert GridConfig(height=10, width=30, step_cap_rule=StepCapRule.LONGEST_SIDE).step_cap == 3000


def test_goal_outside_grid_is_rejected():
    with pytest.raises(ValueError):
        GridConfig(height=5, width=5, goal=Cell(5, 0))


def test_reward_table_ordering_is_enforced():
    with pytest.raises(ValueError):
        RewardTable(phi_goal=0.4, phi_freeway=0.5)
    with pytest.raises(ValueError):
        RewardTable(phi_wall=0.1)
    assert RewardTable().max_episode_reward == pytest.approx(10.5)


def test_move_obstacles_avoids_goal_and_is_uniform(medium_grid):
    world = GridWorld(medium_grid)
    rng = np.random.default_rng(11)
    state = _state([Cell(0, 0)], obstacles=[Cell(1, 1)])
    counts: dict[Cell, int] = {}
    for _ in range(20_000):
        state = world.move_obstacles(state, rng)
        counts[state.obstacle_pos[0]] = counts.get(state.obstacle_pos[0], 0) + 1

    assert medium_grid.goal not in counts
    assert len(counts) == 99
    expected = 20_000 / 99
    assert max(abs(c - expected) for c in counts.values()) < 0.5 * expected


def test_move_obstacles_without_obstacles_is_identity():
    world = GridWorld(GridConfig(height=5, width=5, n_agents=2, n_obstacles=0))
    state = _state([Cell(0, 0), Cell(1, 0)])
    assert world.move_obstacles(state, np.random.default_rng(0)) is state


def test_obstacle_trajectory_is_reproducible(medium_grid):
    world = GridWorld(medium_grid)
    start = _state([Cell(0, 0)], obstacles=[Cell(1, 1), Cell(2, 2), Cell(3, 3)])

    def trajectory(seed: int) -> list[list[Cell]]:
        rng = np.random.default_rng(seed)
        state, path = start, []
        for _ in range(25):
            state = world.move_obstacles(state, rng)
            path.append(state.obstacle_pos)
        return path

    assert trajectory(5) == trajectory(5)


def test_step_into_wall_keeps_position(medium_grid):
    world = GridWorld(medium_grid)
    state = _state([Cell(0, 0)])
    outcome = world.step(state, 0, Action.LEFT)

    assert outcome.next_pos == Cell(0, 0)
    assert outcome.hit_wall
    assert outcome.reward == pytest.approx(-0.5)
    assert state.agent_pos[0] == Cell(0, 0)


def test_step_into_goal_deactivates_agent(medium_grid):
    world = GridWorld(medium_grid)
    state = _state([Cell(8, 9)])
    outcome = world.step(state, 0, Action.RIGHT)

    assert outcome.reached_goal
    assert outcome.reward == pytest.approx(10.0)
    assert state.agent_active == [False]
    assert state.agent_pos[0] == medium_grid.goal
    with pytest.raises(ProtocolViolationError):
        world.step(state, 0, Action.LEFT)


def test_freeway_is_collected_once(medium_grid):
    world = GridWorld(medium_grid)
    state = _state([Cell(3, 3)], freeway=Cell(4, 3))

    first = world.step(state, 0, Action.RIGHT)
    world.step(state, 0, Action.LEFT)
    second = world.step(state, 0, Action.RIGHT)

    assert first.collected_freeway and first.reward == pytest.approx(0.5)
    assert not second.collected_freeway and second.reward == 0.0


def test_obstacle_is_a_hazard_not_a_barrier(medium_grid):
    world = GridWorld(medium_grid)
    state = _state([Cell(3, 3)], obstacles=[Cell(3, 4)])
    outcome = world.step(state, 0, Action.UP)

    assert outcome.hit_obstacle
    assert outcome.reward == pytest.approx(-1.5)
    assert state.agent_pos[0] == Cell(3, 4)


def test_obstacle_on_freeway_combines_components(medium_grid):
    world = GridWorld(medium_grid)
    state = _state([Cell(3, 3)], obstacles=[Cell(3, 2)], freeway=Cell(3, 2))
    outcome = world.step(state, 0, Action.DOWN)

    assert outcome.hit_obstacle and outcome.collected_freeway
    assert outcome.reward == pytest.approx(-1.0)


def test_episode_done_conditions(medium_grid):
    world = GridWorld(medium_grid)
    state = _state([Cell(0, 0), Cell(1, 1)])
    state.step_index = 3
    assert not world.episode_done(state)

    state.step_index = 10_000
    assert world.episode_done(state)

    state.step_index = 3
    state.agent_active = [False, False]
    assert world.episode_done(state)


def test_random_walk_stays_inside_grid(small_grid):
    world = GridWorld(small_grid)
    rng = np.random.default_rng(1)
    state = world.reset(rng)
    for _ in range(500):
        for agent_id in range(small_grid.n_agents):
            if state.agent_active[agent_id]:
                world.step(state, agent_id, Action(int(rng.integers(4))))
        for cell in state.agent_pos:
            assert 0 <= cell.x < small_grid.width and 0 <= cell.y < small_grid.height
    assert sum(state.freeway_collected) <= small_grid.n_agents


def test_state_id_round_trip():
    for s in range(30):
        assert state_id(cell_of(s, 6), 6) == s
