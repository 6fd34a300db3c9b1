"""Experiments application commands."""

from dataclasses import dataclass
from pathlib import Path

from app.modules.experiments.domain.entities import ScenarioConfig


@dataclass
class RunScenarioCommand:
    """Run one scenario and write its artifacts."""

    config: ScenarioConfig
    out_dir: Path
    advice_log: bool = False


@dataclass
class RunSeedsCommand:
    """Run the same scenario under consecutive master seeds."""

    config: ScenarioConfig
    seeds: int
    out_dir: Path
    base_seed: int = 0
    workers: int | None = None


@dataclass
class ReplayCommand:
    """Re-run the scenario recorded in a manifest."""

    manifest_path: Path
    out_dir: Path
