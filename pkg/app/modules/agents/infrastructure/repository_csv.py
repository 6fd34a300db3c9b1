"""CSV-backed Q-table snapshots (state, one column per action)."""

import csv
from pathlib import Path

import numpy as np

from app.core.domain.value_objects import Action
from app.core.exceptions import ArtifactError, NotFoundError
from app.modules.agents.domain.entities import QTable
from app.modules.agents.domain.repositories import QTableRepository

HEADER = ["state", *(a.name.lower() for a in Action)]


class CsvQTableRepository(QTableRepository):
    """Writes qtables/agent_<id>.csv under a run directory."""

    def __init__(self, directory: Path) -> None:
        self.directory = directory

    def _path(self, agent_id: int) -> Path:
        return self.directory / f"agent_{agent_id}.csv"

    def save(self, agent_id: int, qtable: QTable) -> None:
        path = self._path(agent_id)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            with path.open("w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(HEADER)
                for state, row in enumerate(qtable.values):
                    writer.writerow([state, *(repr(float(v)) for v in row)])
        except OSError as e:
            raise ArtifactError(f"cannot write Q-table snapshot {path}: {e}") from e

    def load(self, agent_id: int) -> QTable:
        path = self._path(agent_id)
        if not path.exists():
            raise NotFoundError(f"no Q-table snapshot at {path}")
        try:
            with path.open(newline="", encoding="utf-8") as fh:
                rows = list(csv.reader(fh))[1:]
        except OSError as e:
            raise ArtifactError(f"cannot read Q-table snapshot {path}: {e}") from e
        values = np.array([[float(v) for v in row[1:]] for row in rows], dtype=np.float64)
        return QTable(values=values)
