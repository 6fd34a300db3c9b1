"""CSV subscriber for advice traffic events."""

import csv
from pathlib import Path

from app.core.domain.events import AdviceExchanged, DomainEvent
from app.core.exceptions import ArtifactError

HEADER = ["episode", "step", "advisee", "advisor", "state", "gave_advice", "perturbed"]


class CsvAdviceLog:
    """Appends one advice.csv row per AdviceExchanged event."""

    def __init__(self, path: Path) -> None:
        self.path = path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = path.open("w", newline="", encoding="utf-8")
        except OSError as e:
            raise ArtifactError(f"cannot open advice log {path}: {e}") from e
        self._writer = csv.writer(self._fh, lineterminator="\n")
        self._writer.writerow(HEADER)

    def __call__(self, event: DomainEvent) -> None:
        if not isinstance(event, AdviceExchanged):
            return
        self._writer.writerow(
            [
                event.episode,
                event.step,
                event.advisee,
                event.advisor,
                event.state,
                int(event.gave_advice),
                int(event.perturbed),
            ]
        )

    def close(self) -> None:
        self._fh.close()
