"""Scenario rules: variant resolution, role assignment, config building."""

from typing import Any

from pydantic import ValidationError

from app.core.domain.value_objects import AgentRole, AttackKind, InferenceTargets, Variant
from app.core.exceptions import ConfigurationError
from app.modules.experiments.domain.entities import ParameterOverrides, ScenarioConfig
from app.modules.protocol.domain.entities import PrivacyParams, SharingPolicy

_PARAM_KEYS = ("alpha", "epsilon_explore", "gamma", "w", "kappa", "tau", "tau_prime")
_REWARD_KEYS = ("phi_goal", "phi_freeway", "phi_obstacle", "phi_wall")


def resolve_policy(cfg: ScenarioConfig) -> SharingPolicy:
    """Map a variant to the defenses it keeps.

    no-defense: raw advice from the whole grid, adopted directly.
    ldp-only: perturbed advice from the whole grid, adopted directly.
    brnes: perturbed advice from the neighbor zone, weighted aggregation.
    """
    privacy = None
    if cfg.variant is not Variant.NO_DEFENSE and cfg.privacy_epsilon is not None:
        privacy = PrivacyParams(epsilon=cfg.privacy_epsilon)
    if cfg.variant is Variant.BRNES:
        return SharingPolicy(privacy=privacy, zone_enabled=True, weight=cfg.params.w)
    return SharingPolicy(privacy=privacy, zone_enabled=False, weight=0.0)


def assign_roles(cfg: ScenarioConfig, attackers: list[int]) -> list[AgentRole]:
    roles = [AgentRole.HONEST] * cfg.grid.n_agents
    if cfg.attacker_kind is AttackKind.NONE:
        return roles
    role = AgentRole.BYZANTINE if cfg.attacker_kind is AttackKind.BYZANTINE else AgentRole.INFERENCE
    for agent_id in attackers:
        roles[agent_id] = role
    return roles


def inference_targets(
    cfg: ScenarioConfig, roles: list[AgentRole], attacker_id: int, pick: int
) -> list[int]:
    """Honest agents an inference attacker will query."""
    honest = [i for i, role in enumerate(roles) if role is AgentRole.HONEST]
    if not honest:
        return []
    if cfg.options.inference_targets is InferenceTargets.ALL:
        return honest
    return [honest[pick % len(honest)]]


def build_scenario(**fields: Any) -> ScenarioConfig:
    """Build a preset scenario, turning validation failures into ConfigurationError."""
    try:
        return ScenarioConfig.from_preset(**fields)
    except ValidationError as e:
        raise ConfigurationError(f"invalid scenario: {e}") from e


def apply_overrides(cfg: ScenarioConfig, overrides: ParameterOverrides) -> ScenarioConfig:
    data = cfg.model_dump()
    given = overrides.model_dump(exclude_none=True)
    for key in _PARAM_KEYS:
        if key in given:
            data["params"][key] = given[key]
    for key in _REWARD_KEYS:
        if key in given:
            data["grid"]["rewards"][key] = given[key]
    if "privacy_epsilon" in given:
        data["privacy_epsilon"] = given["privacy_epsilon"]
    if "budget_advisee" in given:
        data["budgets"]["advisee"] = given["budget_advisee"]
    if "budget_advisor" in given:
        data["budgets"]["advisor"] = given["budget_advisor"]
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"invalid parameter override: {e}") from e
