"""Cooperative UCB decision layer on running-consensus statistics.

Each agent k tracks n_hat (its consensus estimate of network-wide pull
counts per arm) and s_hat (estimated network-wide reward sums).  Arms are
ranked by

    s_hat/n_hat + sigma_g * sqrt( (2*gamma/G(eta))
                                  * ((n_hat + f(t)) / (M*n_hat))
                                  * (ln t / n_hat) )

with G(eta) = 1 - eta^2/16 and f(t) = sqrt(ln t); an arm with n_hat <= 0 gets
a +inf index so it is explored first.  After all agents pull, one synchronous
consensus round mixes (state + fresh observation) through the weight matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .exceptions import EstimateUnavailableError
from .weights import WeightMatrix


@dataclass(frozen=True)
class AlgoParams:
    """Exploration parameters; gamma > 1 and 0 < eta <= 1."""

    gamma: float = 1.01
    eta: float = 1.0
    sigma_g: float = 1.0

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise ValueError("gamma must be > 1")
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must be in (0, 1]")
        if not (math.isfinite(self.sigma_g) and self.sigma_g >= 0.0):
            raise ValueError("sigma_g must be finite and >= 0")

    @property
    def g_eta(self) -> float:
        return 1.0 - self.eta**2 / 16.0


def f_explore(t: float) -> float:
    """sqrt(ln t) for t >= 1, else 0."""
    return math.sqrt(math.log(t)) if t >= 1.0 else 0.0


def _log_t(t: float) -> float:
    return math.log(t) if t >= 1.0 else 0.0


@dataclass(frozen=True)
class AgentState:
    n_hat: np.ndarray
    s_hat: np.ndarray

    def __post_init__(self) -> None:
        n = np.asarray(self.n_hat, dtype=float)
        s = np.asarray(self.s_hat, dtype=float)
        if n.shape != s.shape or n.ndim != 1:
            raise ValueError("n_hat and s_hat must be equal-length vectors")
        object.__setattr__(self, "n_hat", n)
        object.__setattr__(self, "s_hat", s)


@dataclass(frozen=True)
class TeamState:
    """Stacked per-agent statistics: row k is agent k; t counts completed steps."""

    n_hat: np.ndarray = field(repr=False)
    s_hat: np.ndarray = field(repr=False)
    t: int = 0

    @classmethod
    def zeros(cls, n_agents: int, n_arms: int) -> "TeamState":
        return cls(np.zeros((n_agents, n_arms)), np.zeros((n_agents, n_arms)), 0)

    @property
    def n_agents(self) -> int:
        return self.n_hat.shape[0]

    def agent(self, k: int) -> AgentState:
        return AgentState(self.n_hat[k].copy(), self.s_hat[k].copy())


def ucb_index(a: AgentState, arm: int, t: int, p: AlgoParams, m_agents: int) -> float:
    if not 0 <= arm < a.n_hat.size:
        raise ValueError(f"arm {arm} out of range")
    n = a.n_hat[arm]
    if n <= 0.0:
        return math.inf
    mean = a.s_hat[arm] / n
    widths = (2.0 * p.gamma / p.g_eta) * ((n + f_explore(t)) / (m_agents * n)) * (_log_t(t) / n)
    return mean + p.sigma_g * math.sqrt(max(widths, 0.0))


def team_indices(ts: TeamState, t: int, p: AlgoParams) -> np.ndarray:
    """ucb_index for every (agent, arm) at once; +inf where n_hat <= 0."""
    n = ts.n_hat
    m_agents = ts.n_agents
    with np.errstate(divide="ignore", invalid="ignore"):
        mean = ts.s_hat / n
        widths = (2.0 * p.gamma / p.g_eta) * ((n + f_explore(t)) / (m_agents * n)) * (_log_t(t) / n)
        out = mean + p.sigma_g * np.sqrt(np.maximum(widths, 0.0))
    return np.where(n <= 0.0, math.inf, out)


def select_arm(indices: np.ndarray) -> int:
    """Argmax with lowest-index tie-breaking (also among +inf sentinels)."""
    idx = np.asarray(indices)
    if idx.size == 0:
        raise ValueError("empty index vector")
    return int(np.argmax(idx))


def consensus_step(
    ts: TeamState, w: WeightMatrix, pulls: np.ndarray, rewards: np.ndarray
) -> TeamState:
    """One synchronous mixing round; all agents update from the pre-step state."""
    m_agents, n_arms = ts.n_hat.shape
    pulls = np.asarray(pulls)
    rewards = np.asarray(rewards, dtype=float)
    if w.n != m_agents:
        raise ValueError(f"weight matrix is {w.n}x{w.n}, team has {m_agents} agents")
    if pulls.shape != (m_agents,) or rewards.shape != (m_agents,):
        raise ValueError("pulls and rewards must have one entry per agent")
    xi = np.zeros((m_agents, n_arms))
    xi[np.arange(m_agents), pulls] = 1.0
    n_new = w.entries @ (ts.n_hat + xi)
    s_new = w.entries @ (ts.s_hat + rewards[:, None] * xi)
    return TeamState(n_new, s_new, ts.t + 1)


def estimated_mean(a: AgentState, arm: int) -> float:
    if not 0 <= arm < a.n_hat.size:
        raise ValueError(f"arm {arm} out of range")
    if a.n_hat[arm] <= 0.0:
        raise EstimateUnavailableError(f"arm {arm} has no pull mass yet")
    return float(a.s_hat[arm] / a.n_hat[arm])
