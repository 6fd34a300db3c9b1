"""CSV and JSON run artifacts."""

import csv
import json
from collections.abc import Iterable, Sequence
from pathlib import Path

from pydantic import ValidationError

from app.core.exceptions import ArtifactError, ConfigurationError
from app.modules.agents.infrastructure.repository_csv import CsvQTableRepository
from app.modules.experiments.domain.entities import RunResult, ScenarioConfig
from app.modules.experiments.domain.repositories import RunArtifactRepository

PACKAGE_VERSION = "0.1.0"

METRICS_HEADER = [
    "episode",
    "sg",
    "reward",
    "delta_q_mean",
    "tg_cumulative",
    "advice_requests",
    "advice_responses",
]
HEATMAP_HEADER = ["x", "y", "visit_count"]
INFERENCE_HEADER = ["episode", "attacker_id", "success_rate_pct"]
ATTACKS_HEADER = [
    "episode",
    "attacker_id",
    "queries_issued",
    "qualifying_states",
    "success_rate_pct",
]


def _fmt(value: object) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
    except OSError as e:
        raise ArtifactError(f"cannot write {path}: {e}") from e
    return path


class CsvRunArtifactRepository(RunArtifactRepository):
    """Writes metrics.csv, heatmap.csv, inference/attacks CSVs, Q-tables and manifest.json."""

    def save_run(self, result: RunResult, out_dir: Path) -> list[Path]:
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactError(f"cannot create output directory {out_dir}: {e}") from e

        written = [
            _write_rows(
                out_dir / "metrics.csv",
                METRICS_HEADER,
                (
                    (
                        r.episode,
                        r.sg,
                        r.reward,
                        r.delta_q_mean,
                        r.tg_cumulative,
                        r.advice_requests,
                        r.advice_responses,
                    )
                    for r in result.records
                ),
            ),
            _write_rows(
                out_dir / "heatmap.csv",
                HEATMAP_HEADER,
                ((h.x, h.y, h.visit_count) for h in result.heatmap),
            ),
        ]
        if result.inference:
            written.append(
                _write_rows(
                    out_dir / "inference.csv",
                    INFERENCE_HEADER,
                    ((i.episode, i.attacker_id, i.success_rate_pct) for i in result.inference),
                )
            )
            written.append(
                _write_rows(
                    out_dir / "attacks.csv",
                    ATTACKS_HEADER,
                    (
                        (
                            i.episode,
                            i.attacker_id,
                            i.queries_issued,
                            i.qualifying_states,
                            i.success_rate_pct,
                        )
                        for i in result.inference
                    ),
                )
            )

        qtables = CsvQTableRepository(out_dir / "qtables")
        for agent in result.agents:
            qtables.save(agent.id, agent.qtable)

        written.append(self._save_manifest(result.config, out_dir / "manifest.json"))
        return written

    def _save_manifest(self, cfg: ScenarioConfig, path: Path) -> Path:
        payload = {"version": PACKAGE_VERSION, "scenario": cfg.model_dump(mode="json")}
        try:
            path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        except OSError as e:
            raise ArtifactError(f"cannot write manifest {path}: {e}") from e
        return path

    def save_summary(self, rows: list[dict[str, float]], out_dir: Path) -> Path:
        header = list(rows[0].keys()) if rows else ["episode"]
        return _write_rows(
            out_dir / "summary.csv", header, ([row[k] for k in header] for row in rows)
        )

    def load_manifest(self, path: Path) -> ScenarioConfig:
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise ArtifactError(f"cannot read manifest {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"manifest {path} is not valid JSON: {e}") from e
        try:
            return ScenarioConfig.model_validate(payload["scenario"])
        except (KeyError, TypeError, ValidationError) as e:
            raise ConfigurationError(f"manifest {path} does not describe a scenario: {e}") from e
