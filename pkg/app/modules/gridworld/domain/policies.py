"""Gridworld rules: occupancy, geometry and state indexing."""

from app.core.domain.value_objects import Cell
from app.core.exceptions import ConfigurationError
from app.modules.gridworld.domain.entities import GridConfig, RewardTable, StepOutcome


def ensure_occupancy(config: GridConfig) -> None:
    """Agents, obstacles, freeway and goal must leave free cells to move through."""
    occupied = config.n_agents + config.n_obstacles + config.n_freeways + 1
    if occupied >= config.n_cells:
        raise ConfigurationError(
            f"{occupied} occupied cells do not fit a {config.height}x{config.width} grid "
            f"({config.n_cells} cells)"
        )


def contains(config: GridConfig, cell: Cell) -> bool:
    return 0 <= cell.x < config.width and 0 <= cell.y < config.height


def state_id(cell: Cell, width: int) -> int:
    return cell.y * width + cell.x


def cell_of(state: int, width: int) -> Cell:
    y, x = divmod(state, width)
    return Cell(x, y)


def chebyshev(a: Cell, b: Cell) -> int:
    return max(abs(a.x - b.x), abs(a.y - b.y))


def non_goal_cells(config: GridConfig) -> list[Cell]:
    return [
        Cell(x, y)
        for y in range(config.height)
        for x in range(config.width)
        if Cell(x, y) != config.goal
    ]


def reward_of(outcome: StepOutcome, rewards: RewardTable) -> float:
    """Sum of the reward components whose flags are set."""
    total = 0.0
    if outcome.hit_wall:
        total += rewards.phi_wall
    if outcome.hit_obstacle:
        total += rewards.phi_obstacle
    if outcome.collected_freeway:
        total += rewards.phi_freeway
    if outcome.reached_goal:
        total += rewards.phi_goal
    return total
