"""Ground-truth bandit model and deterministic reward sampling.

Rewards are Gaussian with a common known scale sigma_g.  Draws come from a
counter-based Philox stream keyed by (seed, trial) with the timestep in the
counter, so any (trial, agent, timestep) address yields the same value no
matter how trials are scheduled — parallel runs need no shared generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class BanditModel:
    arm_means: np.ndarray = field(repr=False)
    sigma_g: float = 1.0

    def __post_init__(self) -> None:
        mu = np.asarray(self.arm_means, dtype=float)
        if mu.ndim != 1 or mu.size < 2:
            raise ValueError("arm_means must be a vector of at least 2 means")
        if not np.all(np.isfinite(mu)):
            raise ValueError("arm means must be finite")
        object.__setattr__(self, "arm_means", mu)
        object.__setattr__(self, "sigma_g", float(self.sigma_g))
        if not (np.isfinite(self.sigma_g) and self.sigma_g >= 0.0):
            raise ValueError("sigma_g must be finite and >= 0")

    @property
    def n_arms(self) -> int:
        return int(self.arm_means.size)


def best_arm(m: BanditModel) -> int:
    """Index of the largest true mean; ties go to the lowest index."""
    return int(np.argmax(m.arm_means))


@dataclass(frozen=True)
class RewardStream:
    """Counter-based normal variates addressed by (trial, agent, timestep)."""

    seed: int
    trial: int

    def normals(self, t: int, count: int) -> np.ndarray:
        """The timestep-t standard-normal draws for agents 0..count-1.

        A prefix property of the underlying generator makes the first k draws
        independent of ``count``, so agent addressing is stable.
        """
        if t < 0:
            raise ValueError("timestep must be >= 0")
        bg = np.random.Philox(
            counter=[0, t, 0, 0], key=[self.seed & 0xFFFFFFFFFFFFFFFF, self.trial]
        )
        return np.random.Generator(bg).standard_normal(count)

    def normal(self, t: int, agent: int) -> float:
        return float(self.normals(t, agent + 1)[agent])


def sample_reward(m: BanditModel, arm: int, stream: RewardStream, t: int, agent: int) -> float:
    """One reward draw: Normal(mu_arm, sigma_g^2) at the given address."""
    if not 0 <= arm < m.n_arms:
        raise ValueError(f"arm {arm} out of range for {m.n_arms} arms")
    return float(m.arm_means[arm] + m.sigma_g * stream.normal(t, agent))


def step_rewards(m: BanditModel, pulls: np.ndarray, stream: RewardStream, t: int) -> np.ndarray:
    """Rewards for all agents' pulls at timestep t (vectorized sample_reward)."""
    pulls = np.asarray(pulls)
    if pulls.size and (pulls.min() < 0 or pulls.max() >= m.n_arms):
        raise ValueError("pull indices out of range")
    z = stream.normals(t, pulls.size)
    return m.arm_means[pulls] + m.sigma_g * z
