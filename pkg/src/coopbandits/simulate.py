"""Monte-Carlo harness for cooperative bandit experiments.

A trial plays T rounds of: score arms per agent, pull, draw rewards, run one
consensus round.  Per step it records the team-average absolute error of the
best arm's estimate and the network-cumulative regret.  A sweep repeats that
over trials and strategies and derives each strategy's convergence time —
the first step its mean error curve drops to 5% of the largest final error
across the compared strategies.

Everything is deterministic given (config, seed): trial randomness is
counter-addressed, trials merge in trial order, and aggregation uses
fixed-order reductions, so --jobs parallelism cannot change results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bandit import BanditModel, RewardStream, best_arm, step_rewards
from .strategies import StrategySpec, build_weights
from .topology import Topology
from .ucb import AlgoParams, TeamState, consensus_step, select_arm, team_indices
from .weights import WeightMatrix


@dataclass(frozen=True)
class ExperimentConfig:
    topology: Topology
    strategies: tuple[StrategySpec, ...]
    bandit: BanditModel
    algo: AlgoParams
    horizon: int
    n_trials: int
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.algo.sigma_g != self.bandit.sigma_g:
            raise ValueError("algo.sigma_g must match bandit.sigma_g")


@dataclass(frozen=True)
class TrialResult:
    error_curve: np.ndarray = field(repr=False)
    regret_curve: np.ndarray = field(repr=False)
    negative_nhat_events: int = 0


@dataclass(frozen=True)
class StrategyOutcome:
    spec: StrategySpec
    label: str
    mean_error: np.ndarray = field(repr=False)
    std_error: np.ndarray = field(repr=False)
    mean_regret: np.ndarray = field(repr=False)
    convergence_time: int | None = None

    @property
    def final_error(self) -> float:
        return float(self.mean_error[-1])


@dataclass(frozen=True)
class SweepResult:
    outcomes: tuple[StrategyOutcome, ...]

    def __iter__(self):
        return iter(self.outcomes)


def team_error(ts: TeamState, m: BanditModel) -> float:
    """Team-average |estimate - truth| for the best arm.

    Agents without pull mass on that arm contribute |0 - mu*|, keeping the
    curve total at early steps.
    """
    star = best_arm(m)
    n = ts.n_hat[:, star]
    s = ts.s_hat[:, star]
    with np.errstate(divide="ignore", invalid="ignore"):
        est = np.where(n > 0.0, s / n, 0.0)
    return float(np.mean(np.abs(est - m.arm_means[star])))


def run_trial(
    cfg: ExperimentConfig,
    strategy: StrategySpec,
    trial: int,
    weights: WeightMatrix | None = None,
) -> TrialResult:
    """Simulate one seeded trial of one strategy.

    Pass ``weights`` to reuse a prebuilt matrix (a sweep builds each
    strategy's matrix exactly once); omitted, it is built here.
    """
    w = build_weights(cfg.topology, strategy) if weights is None else weights
    m_agents = cfg.topology.n_nodes
    model = cfg.bandit
    stream = RewardStream(seed=cfg.seed, trial=trial)
    star_mean = model.arm_means[best_arm(model)]
    gaps = star_mean - model.arm_means

    state = TeamState.zeros(m_agents, model.n_arms)
    errors = np.empty(cfg.horizon)
    regrets = np.empty(cfg.horizon)
    negatives = 0
    regret = 0.0
    for t in range(1, cfg.horizon + 1):
        negatives += int((state.n_hat < 0.0).sum())
        indices = team_indices(state, t, cfg.algo)
        pulls = np.argmax(indices, axis=1)
        rewards = step_rewards(model, pulls, stream, t)
        state = consensus_step(state, w, pulls, rewards)
        regret += float(gaps[pulls].sum())
        errors[t - 1] = team_error(state, model)
        regrets[t - 1] = regret
    return TrialResult(error_curve=errors, regret_curve=regrets, negative_nhat_events=negatives)


def convergence_time(mean_error_curves: Sequence[np.ndarray]) -> list[int | None]:
    """First timestep (1-based) each curve reaches 5% of the largest final error."""
    curves = [np.asarray(c, dtype=float) for c in mean_error_curves]
    if not curves:
        raise ValueError("at least one curve is required")
    if len({c.shape for c in curves}) != 1 or curves[0].ndim != 1:
        raise ValueError("curves must be equal-length vectors")
    threshold = 0.05 * max(float(c[-1]) for c in curves)
    times: list[int | None] = []
    for c in curves:
        hits = np.flatnonzero(c <= threshold)
        times.append(int(hits[0]) + 1 if hits.size else None)
    return times


def _strategy_labels(specs: Sequence[StrategySpec]) -> list[str]:
    counts: dict[str, int] = {}
    labels = []
    for s in specs:
        counts[s.name] = counts.get(s.name, 0) + 1
        labels.append(s.name if counts[s.name] == 1 else f"{s.name}_{counts[s.name]}")
    return labels


def run_sweep(cfg: ExperimentConfig, jobs: int = 1) -> SweepResult:
    """Run every (strategy, trial) pair and aggregate per strategy."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    matrices = [build_weights(cfg.topology, s) for s in cfg.strategies]

    per_strategy: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
    for spec, w in zip(cfg.strategies, matrices):
        tasks = [(cfg, spec, trial, w) for trial in range(cfg.n_trials)]
        if jobs == 1:
            results = [run_trial(*args) for args in tasks]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda args: run_trial(*args), tasks))
        err = np.stack([r.error_curve for r in results])
        reg = np.stack([r.regret_curve for r in results])
        per_strategy.append((err.mean(axis=0), err.std(axis=0), reg.mean(axis=0)))

    times = convergence_time([mean for mean, _, _ in per_strategy])
    outcomes = tuple(
        StrategyOutcome(
            spec=spec,
            label=label,
            mean_error=mean,
            std_error=std,
            mean_regret=reg,
            convergence_time=ct,
        )
        for spec, label, (mean, std, reg), ct in zip(
            cfg.strategies, _strategy_labels(cfg.strategies), per_strategy, times
        )
    )
    return SweepResult(outcomes=outcomes)
