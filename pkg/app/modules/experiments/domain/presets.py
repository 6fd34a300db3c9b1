"""Environment scale presets."""

from dataclasses import dataclass

from app.core.domain.value_objects import Scale


@dataclass(frozen=True)
class ScalePreset:
    height: int
    width: int
    n_agents: int
    n_obstacles: int
    n_freeways: int = 1


PRESETS: dict[Scale, ScalePreset] = {
    Scale.SMALL: ScalePreset(height=5, width=5, n_agents=5, n_obstacles=1),
    Scale.MEDIUM: ScalePreset(height=10, width=10, n_agents=10, n_obstacles=3),
    Scale.LARGE: ScalePreset(height=30, width=30, n_agents=20, n_obstacles=5),
}
