"""Episode loop: environment, harvesting, learning and metric collection."""

import time

import numpy as np

from app.core.config.settings import settings
from app.core.domain.events import EventBus
from app.core.domain.rng import RngStreams
from app.core.domain.value_objects import AgentRole, AttackKind, InferenceScoring
from app.core.logging import logger
from app.modules.adversaries.application.services import (
    attack_success_rate,
    choose_attackers,
    observed_truth,
)
from app.modules.agents.application.services import q_update, record_visit
from app.modules.agents.domain.entities import Agent, AgentLedger, QTable
from app.modules.experiments.domain.entities import (
    HeatmapRecord,
    InferenceRecord,
    MetricsRecord,
    RunResult,
    ScenarioConfig,
)
from app.modules.experiments.domain.policies import (
    assign_roles,
    inference_targets,
    resolve_policy,
)
from app.modules.gridworld.application.services import GridWorld
from app.modules.gridworld.domain.policies import cell_of, state_id
from app.modules.protocol.application.services import ExperienceSharingService


def build_agents(cfg: ScenarioConfig, rngs: RngStreams) -> list[Agent]:
    n_agents, n_states = cfg.grid.n_agents, cfg.grid.n_cells
    attackers = []
    if cfg.attacker_kind is not AttackKind.NONE:
        attackers = choose_attackers(n_agents, cfg.attacker_fraction, rngs.stream("attackers"))
    roles = assign_roles(cfg, attackers)

    agents = [
        Agent(
            id=i,
            role=role,
            qtable=QTable.zeros(n_states),
            ledger=AgentLedger.fresh(n_states, cfg.budgets),
        )
        for i, role in enumerate(roles)
    ]
    target_rng = rngs.stream("inference-targets")
    for agent in agents:
        if agent.role is AgentRole.INFERENCE:
            agent.targets = inference_targets(cfg, roles, agent.id, int(target_rng.integers(n_agents)))
    return agents


class _Clock:
    def __init__(self, kind: str) -> None:
        self.kind = kind
        self.start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.start if self.kind == "wall" else 0.0


class ScenarioRunner:
    """Executes one scenario end to end; deterministic given its master seed."""

    def __init__(self, cfg: ScenarioConfig, event_bus: EventBus | None = None) -> None:
        self.cfg = cfg
        self.rngs = RngStreams(cfg.master_seed)
        self.world = GridWorld(cfg.grid)
        self.agents = build_agents(cfg, self.rngs)
        self.sharing = ExperienceSharingService(
            grid=cfg.grid,
            params=cfg.params,
            budgets=cfg.budgets,
            policy=resolve_policy(cfg),
            rngs=self.rngs,
            options=cfg.options,
            byzantine=cfg.byzantine_config(),
            event_bus=event_bus,
        )
        self.sharing.register_attackers(self.agents)
        honest = [a.id for a in self.agents if a.is_honest]
        self.measured = honest or [a.id for a in self.agents]

    def run(self) -> RunResult:
        cfg = self.cfg
        logger.info(
            f"Starting run: scale={cfg.scale.value} variant={cfg.variant.value} "
            f"attack={cfg.attacker_kind.value}@{cfg.attacker_fraction} "
            f"epsilon={cfg.privacy_epsilon} episodes={cfg.episodes} seed={cfg.master_seed}"
        )
        clock = _Clock(cfg.tg_clock)
        heat = np.zeros(cfg.grid.n_cells, dtype=np.int64)
        result = RunResult(config=cfg, agents=self.agents)

        for episode in range(1, cfg.episodes + 1):
            record = self._run_episode(episode, heat, clock)
            result.records.append(record)
            result.inference.extend(self._score_attacks(episode))
            if episode % settings.log_every == 0:
                logger.info(
                    f"episode {episode}/{cfg.episodes}: sg={record.sg:.1f} "
                    f"reward={record.reward:.2f} dq={record.delta_q_mean:.4f} "
                    f"advice={record.advice_responses}/{record.advice_requests}"
                )

        for s in range(cfg.grid.n_cells):
            cell = cell_of(s, cfg.grid.width)
            result.heatmap.append(HeatmapRecord(x=cell.x, y=cell.y, visit_count=int(heat[s])))
        logger.info(f"Run finished: {result.total_steps} agent steps over {cfg.episodes} episodes")
        return result

    def _run_episode(self, episode: int, heat: np.ndarray, clock: _Clock) -> MetricsRecord:
        cfg, world, agents = self.cfg, self.world, self.agents
        width = cfg.grid.width
        n = len(agents)
        steps = np.zeros(n, dtype=np.int64)
        rewards = np.zeros(n, dtype=np.float64)
        reached = [False] * n
        dq_total, dq_count = 0.0, 0
        requests = responses = 0

        state = world.reset(self.rngs.stream("env"))
        obstacle_rng = self.rngs.stream("obstacles")
        while not world.episode_done(state):
            state = world.move_obstacles(state, obstacle_rng)
            self.sharing.begin_step(episode, state.step_index)
            for agent in agents:
                if not state.agent_active[agent.id]:
                    continue
                decision = self.sharing.harvest(agent, state, agents)
                outcome = world.step(state, agent.id, decision.action)
                next_state = state_id(outcome.next_pos, width)
                dq_total += q_update(
                    agent.qtable,
                    decision.state,
                    decision.action,
                    outcome.reward,
                    next_state,
                    cfg.params,
                )
                dq_count += 1
                record_visit(agent.ledger, decision.state)
                heat[decision.state] += 1

                steps[agent.id] += 1
                rewards[agent.id] += outcome.reward
                reached[agent.id] = reached[agent.id] or outcome.reached_goal
                requests += int(decision.requested)
                responses += decision.responses
            world.advance(state)

        measured = self.measured
        # agents that never reached the goal count as the full step cap
        sg = [steps[i] if reached[i] else cfg.grid.step_cap for i in measured]
        return MetricsRecord(
            episode=episode,
            sg=float(np.mean(sg)),
            reward=float(np.mean(rewards[measured])),
            delta_q_mean=dq_total / dq_count if dq_count else 0.0,
            tg_cumulative=clock.elapsed(),
            advice_requests=requests,
            advice_responses=responses,
        )

    def _score_attacks(self, episode: int) -> list[InferenceRecord]:
        observed = self.cfg.options.inference_scoring is InferenceScoring.OBSERVED
        rows = []
        for attacker_id, by_target in sorted(self.sharing.attack_states.items()):
            queries = qualifying = 0
            recovered = 0.0
            for target, attack_state in sorted(by_target.items()):
                if observed:
                    truth = observed_truth(attack_state, self.cfg.grid.n_cells)
                else:
                    truth = self.agents[target].qtable
                success = attack_success_rate(attack_state, truth)
                queries += attack_state.queries_issued
                qualifying += success.qualifying_states
                recovered += success.rate_pct * success.qualifying_states / 100.0
            rate = 100.0 * recovered / qualifying if qualifying else 0.0
            rows.append(
                InferenceRecord(
                    episode=episode,
                    attacker_id=attacker_id,
                    queries_issued=queries,
                    qualifying_states=qualifying,
                    success_rate_pct=rate,
                )
            )
        return rows


def run_scenario(cfg: ScenarioConfig, event_bus: EventBus | None = None) -> RunResult:
    return ScenarioRunner(cfg, event_bus).run()
