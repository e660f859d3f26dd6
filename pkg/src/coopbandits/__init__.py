"""Cooperative multi-agent bandits over communication graphs.

Agents running a cooperative UCB policy share statistics through repeated
consensus averaging; how fast the team agrees is set by the weight matrix on
the graph's edges.  This package builds those matrices (five closed-form
strategies plus a convex SLEM minimizer), simulates the bandit teams, and
drives reproducible experiments from JSON configs via the `coopbandits` CLI.
"""

__version__ = "0.1.0"

from .bandit import BanditModel, RewardStream, best_arm, sample_reward
from .exceptions import (
    ConfigError,
    EstimateUnavailableError,
    GraphConstructionError,
    NumericError,
)
from .fdla import OptimizationTrace, fdla_optimize
from .linalg import symmetric_eigen
from .simulate import (
    ExperimentConfig,
    SweepResult,
    TrialResult,
    convergence_time,
    run_sweep,
    run_trial,
    team_error,
)
from .strategies import (
    STRATEGY_NAMES,
    BestConstantWeights,
    FdlaWeights,
    LocalDegreeWeights,
    ManualConstantWeights,
    MaxDegreeWeights,
    MetropolisHastingsWeights,
    StrategySpec,
    best_constant_weights,
    build_weights,
    local_degree_weights,
    manual_constant_weights,
    max_degree_weights,
    metropolis_hastings_weights,
)
from .topology import TOPOLOGY_KINDS, Topology, build_topology, is_connected, laplacian
from .ucb import (
    AgentState,
    AlgoParams,
    TeamState,
    consensus_step,
    estimated_mean,
    select_arm,
    ucb_index,
)
from .weights import SpectralReport, WeightMatrix, slem, spectral_report, validate_weight_matrix

__all__ = [
    "__version__",
    "AgentState",
    "AlgoParams",
    "BanditModel",
    "BestConstantWeights",
    "ConfigError",
    "EstimateUnavailableError",
    "ExperimentConfig",
    "FdlaWeights",
    "GraphConstructionError",
    "LocalDegreeWeights",
    "ManualConstantWeights",
    "MaxDegreeWeights",
    "MetropolisHastingsWeights",
    "NumericError",
    "OptimizationTrace",
    "RewardStream",
    "STRATEGY_NAMES",
    "SpectralReport",
    "StrategySpec",
    "SweepResult",
    "TOPOLOGY_KINDS",
    "TeamState",
    "Topology",
    "TrialResult",
    "WeightMatrix",
    "best_arm",
    "best_constant_weights",
    "build_topology",
    "build_weights",
    "consensus_step",
    "convergence_time",
    "estimated_mean",
    "fdla_optimize",
    "is_connected",
    "laplacian",
    "local_degree_weights",
    "manual_constant_weights",
    "max_degree_weights",
    "metropolis_hastings_weights",
    "run_sweep",
    "run_trial",
    "sample_reward",
    "select_arm",
    "slem",
    "spectral_report",
    "symmetric_eigen",
    "team_error",
    "ucb_index",
    "validate_weight_matrix",
]
