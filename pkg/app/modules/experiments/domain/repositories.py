"""Experiments domain repository interfaces."""

from abc import ABC, abstractmethod
from pathlib import Path

from app.modules.experiments.domain.entities import RunResult, ScenarioConfig


class RunArtifactRepository(ABC):
    """Repository interface for run artifacts."""

    @abstractmethod
    def save_run(self, result: RunResult, out_dir: Path) -> list[Path]:
        """Write every artifact of a run and return the written paths."""
        pass

    @abstractmethod
    def save_summary(self, rows: list[dict[str, float]], out_dir: Path) -> Path:
        """Write the cross-seed summary table."""
        pass

    @abstractmethod
    def load_manifest(self, path: Path) -> ScenarioConfig:
        """Read back the scenario a run was produced from."""
        pass
