"""Experiments application services."""

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from app.core.config.settings import settings
from app.core.domain.events import InMemoryEventBus
from app.core.exceptions import ConfigurationError
from app.core.logging import logger
from app.modules.experiments.application.analysis import aggregate_seeds
from app.modules.experiments.application.commands import (
    ReplayCommand,
    RunScenarioCommand,
    RunSeedsCommand,
)
from app.modules.experiments.application.runner import run_scenario
from app.modules.experiments.domain.entities import MetricsRecord, RunResult, ScenarioConfig
from app.modules.experiments.domain.repositories import RunArtifactRepository
from app.modules.experiments.infrastructure.repository_csv import CsvRunArtifactRepository
from app.modules.protocol.infrastructure.advice_log import CsvAdviceLog


def _execute(
    cfg: ScenarioConfig, out_dir: Path, advice_log: bool, repository: RunArtifactRepository
) -> RunResult:
    bus = None
    log = None
    if advice_log:
        bus = InMemoryEventBus()
        log = CsvAdviceLog(out_dir / "advice.csv")
        bus.subscribe(log)
    try:
        result = run_scenario(cfg, event_bus=bus)
    finally:
        if log is not None:
            log.close()
    written = repository.save_run(result, out_dir)
    logger.info(f"Wrote {len(written)} artifacts to {out_dir}")
    return result


def _seed_worker(cfg: ScenarioConfig, out_dir: Path) -> list[MetricsRecord]:
    # runs in a child process; only the metric series travels back
    return _execute(cfg, out_dir, False, CsvRunArtifactRepository()).records


class ExperimentService:
    """Runs scenarios and persists their artifacts."""

    def __init__(self, repository: RunArtifactRepository) -> None:
        self.repository = repository

    def run(self, command: RunScenarioCommand) -> RunResult:
        return _execute(command.config, command.out_dir, command.advice_log, self.repository)

    def run_seeds(self, command: RunSeedsCommand) -> list[list[MetricsRecord]]:
        """Run seeds base_seed..base_seed+seeds-1 into seed_<s>/ plus summary.csv."""
        if command.seeds < 1:
            raise ConfigurationError("seeds must be >= 1")
        configs = [
            command.config.model_copy(update={"master_seed": command.base_seed + i})
            for i in range(command.seeds)
        ]
        dirs = [command.out_dir / f"seed_{c.master_seed}" for c in configs]
        workers = command.workers or settings.max_workers or 1

        if workers == 1:
            runs = [
                _execute(c, d, False, self.repository).records
                for c, d in zip(configs, dirs, strict=True)
            ]
        else:
            logger.info(f"Running {command.seeds} seeds on {workers} worker processes")
            with ProcessPoolExecutor(max_workers=workers) as pool:
                runs = list(pool.map(_seed_worker, configs, dirs))

        summary = self.repository.save_summary(aggregate_seeds(runs), command.out_dir)
        logger.info(f"Wrote seed summary to {summary}")
        return runs

    def simulate(self, cfg: ScenarioConfig) -> RunResult:
        """Run a scenario in memory without writing artifacts."""
        return run_scenario(cfg)

    def replay(self, command: ReplayCommand) -> RunResult:
        cfg = self.repository.load_manifest(command.manifest_path)
        logger.info(f"Replaying {command.manifest_path} (seed={cfg.master_seed})")
        if cfg.tg_clock == "wall":
            logger.warning(
                f"{command.manifest_path} records tg_clock=wall; tg_cumulative will differ "
                "from the original run (use --tg-clock null for byte-identical replays)"
            )
        return self.run(RunScenarioCommand(config=cfg, out_dir=command.out_dir))
