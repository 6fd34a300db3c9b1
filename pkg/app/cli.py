"""Command-line entry point: `brnes run` and `brnes replay`."""

import argparse
import sys
from collections.abc import Sequence
from enum import Enum
from pathlib import Path

from app.core.config.settings import settings
from app.core.domain.value_objects import (
    AttackKind,
    EgcBudgetRule,
    GateMode,
    InferenceScoring,
    InferenceTargets,
    Scale,
    StepCapRule,
    Variant,
)
from app.core.exceptions import ConfigurationError, DomainException
from app.core.logging import logger
from app.modules.experiments.application.commands import (
    ReplayCommand,
    RunScenarioCommand,
    RunSeedsCommand,
)
from app.modules.experiments.application.services import ExperimentService
from app.modules.experiments.domain.entities import ScenarioConfig
from app.modules.experiments.domain.policies import apply_overrides, build_scenario
from app.modules.experiments.infrastructure.config_file import load_overrides
from app.modules.experiments.infrastructure.repository_csv import CsvRunArtifactRepository
from app.modules.protocol.domain.entities import ProtocolOptions

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FAILURE = 1


def _epsilon(value: str) -> float | None:
    if value.lower() == "none":
        return None
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'none', got {value!r}") from None


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def _choices(enum_type: type[Enum]) -> list[str]:
    return [member.value for member in enum_type]


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    p = argparse.ArgumentParser(prog="brnes", description="BRNES experience-sharing simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a scenario over one or more seeds.")
    run.add_argument("--scale", choices=[s.value for s in Scale if s is not Scale.CUSTOM], default="medium")
    run.add_argument("--variant", choices=_choices(Variant), default=Variant.BRNES.value)
    run.add_argument("--attackers", type=float, default=0.0, help="Share of agents that are adversarial.")
    run.add_argument("--attack", choices=_choices(AttackKind), default=AttackKind.NONE.value)
    run.add_argument("--epsilon", type=_epsilon, default=1.0, help="Privacy budget, or 'none' for no LDP.")
    run.add_argument("--episodes", type=int, default=None,
                     help="Defaults to 1000, or 3000 for inference attacks.")
    run.add_argument("--seeds", type=int, default=settings.default_seeds)
    run.add_argument("--seed", type=int, default=0, help="Base master seed.")
    run.add_argument("--out", type=Path, default=Path(settings.output_dir))
    run.add_argument("--config", type=Path, default=None, help="TOML or JSON parameter overrides.")
    run.add_argument("--tg-clock", choices=["wall", "null"], default=settings.tg_clock)
    run.add_argument("--advice-log", action="store_true", help="Write advice.csv (single-seed runs).")
    run.add_argument("--workers", type=int, default=settings.max_workers)

    # sensitivity switches
    run.add_argument("--step-cap-rule", choices=_choices(StepCapRule), default=StepCapRule.CELLS.value)
    run.add_argument("--gate-mode", choices=_choices(GateMode), default=GateMode.DETERMINISTIC.value)
    run.add_argument("--egc-budget-rule", choices=_choices(EgcBudgetRule),
                     default=EgcBudgetRule.REFUSE_WHEN_EXHAUSTED.value)
    run.add_argument("--inference-targets", choices=_choices(InferenceTargets),
                     default=InferenceTargets.DESIGNATED.value)
    run.add_argument("--no-inactive-advisors", action="store_true",
                     help="Agents that reached the goal stop answering advice requests.")
    run.add_argument("--inference-queries", type=_positive_int, default=50,
                     help="Queries an inference attacker sends each target per request round.")
    run.add_argument("--inference-bypass-ehc", action="store_true",
                     help="Inference attackers skip their own harvesting gate and report zero visits.")
    run.add_argument("--inference-scoring", choices=_choices(InferenceScoring),
                     default=InferenceScoring.OBSERVED.value)

    replay = sub.add_parser("replay", help="Re-run the scenario recorded in a manifest.")
    replay.add_argument("--manifest", type=Path, required=True)
    replay.add_argument("--out", type=Path, default=None,
                        help="Defaults to a 'replay' directory next to the manifest.")

    return p.parse_args(argv)


def build_config(args: argparse.Namespace) -> ScenarioConfig:
    options = ProtocolOptions(
        gate_mode=GateMode(args.gate_mode),
        egc_budget_rule=EgcBudgetRule(args.egc_budget_rule),
        inactive_agents_advise=not args.no_inactive_advisors,
        inference_targets=InferenceTargets(args.inference_targets),
        inference_queries=args.inference_queries,
        inference_bypass_ehc=args.inference_bypass_ehc,
        inference_scoring=InferenceScoring(args.inference_scoring),
    )
    cfg = build_scenario(
        scale=Scale(args.scale),
        step_cap_rule=StepCapRule(args.step_cap_rule),
        variant=Variant(args.variant),
        attacker_kind=AttackKind(args.attack),
        attacker_fraction=args.attackers,
        privacy_epsilon=args.epsilon,
        episodes=args.episodes,
        master_seed=args.seed,
        options=options,
        tg_clock=args.tg_clock,
    )
    if args.config is not None:
        cfg = apply_overrides(cfg, load_overrides(args.config))
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    args = parse_args(argv)
    service = ExperimentService(CsvRunArtifactRepository())
    try:
        if args.command == "replay":
            out_dir = args.out or args.manifest.parent / "replay"
            service.replay(ReplayCommand(manifest_path=args.manifest, out_dir=out_dir))
            return EXIT_OK

        cfg = build_config(args)
        if args.seeds == 1:
            service.run(RunScenarioCommand(config=cfg, out_dir=args.out, advice_log=args.advice_log))
        else:
            if args.advice_log:
                logger.warning("--advice-log is only honoured for single-seed runs")
            service.run_seeds(
                RunSeedsCommand(
                    config=cfg,
                    seeds=args.seeds,
                    out_dir=args.out,
                    base_seed=args.seed,
                    workers=args.workers,
                )
            )
    except ConfigurationError as e:
        print(f"configuration error: {e.detail}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainException as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
