"""Experiments API routes."""

from collections.abc import Sequence
from dataclasses import asdict
from typing import Annotated

from fastapi import APIRouter, Depends, Request

from app.core.config.settings import settings
from app.core.domain.value_objects import Scale
from app.core.exceptions import ConfigurationError, NotFoundError
from app.core.middleware.rate_limit import limiter
from app.modules.experiments.api.schemas import (
    InferenceRow,
    MetricsRow,
    PresetResponse,
    RunRequest,
    RunResponse,
    RunSummary,
)
from app.modules.experiments.application.analysis import (
    convergence_series,
    final_window_mean,
    first_sustained_below,
)
from app.modules.experiments.application.services import ExperimentService
from app.modules.experiments.domain.entities import MetricsRecord
from app.modules.experiments.domain.policies import apply_overrides, build_scenario
from app.modules.experiments.domain.presets import PRESETS, ScalePreset
from app.modules.experiments.infrastructure.repository_csv import CsvRunArtifactRepository

router = APIRouter(tags=["experiments"])

FINAL_WINDOW = 200


def get_experiment_service() -> ExperimentService:
    """Dependency for experiment service."""
    return ExperimentService(CsvRunArtifactRepository())


def _preset_response(scale: Scale, preset: ScalePreset) -> PresetResponse:
    return PresetResponse(scale=scale, **asdict(preset))


@router.get("/presets", response_model=list[PresetResponse])
def list_presets() -> list[PresetResponse]:
    """List the environment scale presets."""
    return [_preset_response(scale, preset) for scale, preset in PRESETS.items()]


@router.get("/presets/{scale}", response_model=PresetResponse)
def get_preset(scale: str) -> PresetResponse:
    """Get one scale preset."""
    try:
        preset = PRESETS[Scale(scale)]
    except (ValueError, KeyError):
        raise NotFoundError(f"Unknown scale preset: {scale}") from None
    return _preset_response(Scale(scale), preset)


@router.post("/runs", response_model=RunResponse)
@limiter.limit(settings.api_rate_limit)
def create_run(
    request: Request,
    data: RunRequest,
    service: Annotated[ExperimentService, Depends(get_experiment_service)],
) -> RunResponse:
    """Run one scenario synchronously and return its metric series.

    Episodes are capped by `api_max_episodes`; use the CLI for full-length runs.
    """
    if data.episodes > settings.api_max_episodes:
        raise ConfigurationError(
            f"episodes={data.episodes} exceeds the API limit of {settings.api_max_episodes}"
        )
    if data.scale not in PRESETS:
        raise ConfigurationError(f"scale {data.scale.value} has no preset; use the CLI")

    cfg = build_scenario(
        scale=data.scale,
        variant=data.variant,
        attacker_kind=data.attack,
        attacker_fraction=data.attackers,
        privacy_epsilon=data.epsilon,
        episodes=data.episodes,
        master_seed=data.seed,
        tg_clock=settings.tg_clock,
    )
    if data.overrides is not None:
        cfg = apply_overrides(cfg, data.overrides)

    result = service.simulate(cfg)
    window = min(FINAL_WINDOW, cfg.episodes)
    summary = RunSummary(
        final_window=window,
        final_sg_mean=final_window_mean(result.records, "sg", window),
        final_reward_mean=final_window_mean(result.records, "reward", window),
        convergence_episode=_convergence_episode(result.records, data.convergence_threshold),
        total_steps=result.total_steps,
    )
    return RunResponse(
        scenario=cfg.model_dump(mode="json"),
        summary=summary,
        metrics=[MetricsRow(**asdict(r)) for r in result.records],
        inference=[InferenceRow(**asdict(i)) for i in result.inference],
    )


def _convergence_episode(records: Sequence[MetricsRecord], threshold: float) -> int | None:
    index = first_sustained_below(convergence_series(records), threshold)
    return None if index is None else records[index].episode
