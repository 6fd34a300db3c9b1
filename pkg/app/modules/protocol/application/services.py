"""Experience harvesting (advisee side) and experience giving (advisor side)."""

import numpy as np

from app.core.domain.events import AdviceExchanged, EventBus
from app.core.domain.rng import RngStreams
from app.core.domain.value_objects import AgentRole, Cell, EgcBudgetRule
from app.core.exceptions import ProtocolViolationError
from app.core.logging import logger
from app.modules.adversaries.application.services import fabricate_advice, infer_round
from app.modules.adversaries.domain.entities import ByzantineConfig, InferenceAttackState
from app.modules.agents.application.services import select_action
from app.modules.agents.domain.entities import Agent, AgentParams, BudgetTotals
from app.modules.gridworld.domain.entities import EnvState, GridConfig
from app.modules.gridworld.domain.policies import state_id
from app.modules.protocol.application.ldp import grr_perturb
from app.modules.protocol.domain.entities import (
    AdviceRequest,
    AdviceResponse,
    HarvestResult,
    NeighborZone,
    PrivacyParams,
    ProtocolOptions,
    SharingPolicy,
)
from app.modules.protocol.domain.policies import (
    best_advice,
    egc,
    ehc,
    gives_advice,
    neighbor_zone,
    seeks_advice,
    weighted_aggregate,
    whole_grid_zone,
)


def advise(
    advisor: Agent,
    request: AdviceRequest,
    privacy: PrivacyParams | None,
    rng: np.random.Generator,
    budget_total: int,
    options: ProtocolOptions | None = None,
) -> AdviceResponse:
    """Gate on giving confidence, then release a GRR-perturbed copy of Q(s, .)."""
    options = options or ProtocolOptions()
    if advisor.role is AgentRole.BYZANTINE:
        raise ProtocolViolationError(f"agent {advisor.id} is Byzantine and cannot advise honestly")

    ledger = advisor.ledger
    if (
        options.egc_budget_rule is EgcBudgetRule.REFUSE_WHEN_EXHAUSTED
        and ledger.advisor_budget <= 0
    ):
        return AdviceResponse.refusal(advisor.id)

    p_give = egc(
        ledger.visits(request.state),
        request.advisee_visits,
        ledger.advisor_budget,
        budget_total,
    )
    if not gives_advice(p_give, options.gate_mode, rng):
        return AdviceResponse.refusal(advisor.id)

    vector = advisor.qtable.row(request.state).copy()
    if privacy is not None:
        vector = grr_perturb(vector, privacy, rng)
    ledger.spend_advisor()
    return AdviceResponse(advisor_id=advisor.id, q_vector=vector, perturbed=privacy is not None)


class ExperienceSharingService:
    """Runs the advice exchange for one simulation run."""

    def __init__(
        self,
        grid: GridConfig,
        params: AgentParams,
        budgets: BudgetTotals,
        policy: SharingPolicy,
        rngs: RngStreams,
        options: ProtocolOptions | None = None,
        byzantine: ByzantineConfig | None = None,
        event_bus: EventBus | None = None,
    ) -> None:
        self.grid = grid
        self.params = params
        self.budgets = budgets
        self.policy = policy
        self.rngs = rngs
        self.options = options or ProtocolOptions()
        self.byzantine = byzantine or ByzantineConfig()
        self.event_bus = event_bus
        self.attack_states: dict[int, dict[int, InferenceAttackState]] = {}
        self.episode = 0
        self.step = 0

    def register_attackers(self, agents: list[Agent]) -> None:
        """Open an empty attack record for every (inference attacker, target) pair."""
        for agent in agents:
            if agent.role is not AgentRole.INFERENCE:
                continue
            by_target = self.attack_states.setdefault(agent.id, {})
            for target in agent.targets:
                by_target.setdefault(target, InferenceAttackState(agent.id, target))

    def begin_step(self, episode: int, step: int) -> None:
        self.episode = episode
        self.step = step

    def zone_for(self, advisee_pos: Cell, n_agents: int) -> NeighborZone:
        if self.policy.zone_enabled:
            return neighbor_zone(n_agents, advisee_pos, self.grid)
        return whole_grid_zone(advisee_pos, self.grid)

    def _wants_advice(self, advisee: Agent, state: int) -> bool:
        ledger = advisee.ledger
        if ledger.advisee_budget <= 0 or advisee.role is AgentRole.BYZANTINE:
            return False
        if advisee.role is AgentRole.INFERENCE and self.options.inference_bypass_ehc:
            return True
        p_harvest = ehc(
            ledger.visits(state),
            ledger.advisee_budget,
            self.budgets.advisee,
            self.params.tau,
            self.params.tau_prime,
        )
        return seeks_advice(
            p_harvest,
            self.params.kappa,
            self.options.gate_mode,
            self.rngs.stream(f"gate-{advisee.id}"),
        )

    def _respond(self, advisor: Agent, request: AdviceRequest, env: EnvState) -> AdviceResponse:
        if advisor.role is AgentRole.BYZANTINE:
            return fabricate_advice(
                advisor,
                request,
                goal=self.grid.goal,
                advisee_pos=env.agent_pos[request.advisee_id],
                grid=self.grid,
                cfg=self.byzantine,
                rng=self.rngs.stream(f"byzantine-{advisor.id}"),
            )
        return advise(
            advisor,
            request,
            self.policy.privacy,
            self.rngs.stream(f"ldp-{advisor.id}"),
            self.budgets.advisor,
            self.options,
        )

    def collect_advice(
        self,
        request: AdviceRequest,
        zone: NeighborZone,
        agents: list[Agent],
        env: EnvState,
    ) -> list[AdviceResponse]:
        """Ask every in-zone agent; drop refusals. Spends one advisee budget unit.

        An inference attacker asks only its targets, each of them
        `inference_queries` times within the round.
        """
        advisee = agents[request.advisee_id]
        advisee.ledger.spend_advisee()
        attacking = advisee.role is AgentRole.INFERENCE
        repeats = self.options.inference_queries if attacking else 1

        responses = []
        for advisor in agents:
            if advisor.id == advisee.id:
                continue
            if attacking and advisor.id not in advisee.targets:
                continue
            if not env.agent_active[advisor.id] and not self.options.inactive_agents_advise:
                continue
            if not zone.contains(env.agent_pos[advisor.id]):
                continue

            for _ in range(repeats):
                response = self._respond(advisor, request, env)
                self._publish(advisee.id, advisor.id, request.state, response)
                if not response.refused:
                    responses.append(response)
        return responses

    def _publish(self, advisee: int, advisor: int, state: int, response: AdviceResponse) -> None:
        if self.event_bus is None:
            return
        self.event_bus.publish(
            AdviceExchanged(
                episode=self.episode,
                step=self.step,
                advisee=advisee,
                advisor=advisor,
                state=state,
                gave_advice=not response.refused,
                perturbed=response.perturbed,
            )
        )

    def _observe(
        self, attacker: Agent, state: int, responses: list[AdviceResponse], agents: list[Agent]
    ) -> None:
        by_target = self.attack_states.setdefault(attacker.id, {})
        rng = self.rngs.stream(f"inference-{attacker.id}")
        for target in attacker.targets:
            attack_state = by_target.setdefault(target, InferenceAttackState(attacker.id, target))
            attack_state.queries_issued += 1
            answered = [r for r in responses if r.advisor_id == target]
            if not answered:
                continue
            infer_round(attack_state, answered, state, rng)
            attack_state.observed_rows[state] = agents[target].qtable.row(state).copy()

    def harvest(self, advisee: Agent, env: EnvState, agents: list[Agent]) -> HarvestResult:
        """Seek, aggregate and select: everything before the environment step."""
        pos = env.agent_pos[advisee.id]
        state = state_id(pos, self.grid.width)
        explore_rng = self.rngs.stream(f"explore-{advisee.id}")

        if not self._wants_advice(advisee, state):
            return HarvestResult(state, select_action(advisee.qtable, state, self.params, explore_rng))

        visits = advisee.ledger.visits(state)
        if advisee.role is AgentRole.INFERENCE and self.options.inference_bypass_ehc:
            visits = 0
        request = AdviceRequest(state=state, advisee_visits=visits, advisee_id=advisee.id)
        zone = self.zone_for(pos, len(agents))
        responses = self.collect_advice(request, zone, agents, env)
        if advisee.role is AgentRole.INFERENCE:
            self._observe(advisee, state, responses, agents)

        aggregated = False
        if responses:
            xi = best_advice([r.q_vector for r in responses])
            advisee.qtable.values[state] = weighted_aggregate(
                advisee.qtable.row(state), xi, self.policy.weight
            )
            aggregated = True
            logger.debug(
                f"agent {advisee.id} aggregated {len(responses)} advice vectors at state {state}"
            )

        action = select_action(advisee.qtable, state, self.params, explore_rng)
        return HarvestResult(
            state=state,
            action=action,
            requested=True,
            responses=len(responses),
            aggregated=aggregated,
        )
