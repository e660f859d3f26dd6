"""Weight-assignment strategies for consensus averaging.

Five closed-form rules plus a convex spectral-norm minimizer (see `fdla`):

- manual_constant: every edge gets a caller-chosen alpha (W = I - alpha*L)
- max_degree: alpha = 1/(d_max + 1)
- local_degree: edge (i,j) gets 1/max(d_i, d_j)
- metropolis_hastings: edge (i,j) gets 1/(1 + max(d_i, d_j))
- best_constant: the single alpha minimizing SLEM, 2/(lam_2(L) + lam_max(L))
- fdla_optimized: projected-subgradient minimization of SLEM over edge weights

All return a `WeightMatrix` whose diagonal absorbs the slack, so rows sum
to 1 exactly up to round-off.  `build_weights` dispatches by name; the
estimator classes wrap the same rules in a fit/transform interface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .linalg import symmetric_eigen
from .topology import Topology, laplacian
from .weights import WeightMatrix, slem

STRATEGY_NAMES = (
    "manual_constant",
    "max_degree",
    "local_degree",
    "metropolis_hastings",
    "best_constant",
    "fdla_optimized",
)


def assemble(t: Topology, edge_weights: np.ndarray) -> WeightMatrix:
    """Build W from per-edge weights; diagonal = 1 - sum of incident weights."""
    ew = np.asarray(edge_weights, dtype=float)
    if ew.shape != (t.n_edges,):
        raise ValueError(f"expected {t.n_edges} edge weights, got shape {ew.shape}")
    w = np.zeros((t.n_nodes, t.n_nodes))
    if t.n_edges:
        e = np.array(t.edges, dtype=np.intp)
        w[e[:, 0], e[:, 1]] = ew
        w[e[:, 1], e[:, 0]] = ew
    np.fill_diagonal(w, 1.0 - w.sum(axis=1))
    return WeightMatrix(topology=t, entries=w)


def _pairwise_max_degree(t: Topology) -> np.ndarray:
    if not t.n_edges:
        return np.empty(0)
    deg = t.degrees()
    e = np.array(t.edges, dtype=np.intp)
    return np.maximum(deg[e[:, 0]], deg[e[:, 1]]).astype(float)


def manual_constant_weights(t: Topology, alpha: float) -> WeightMatrix:
    alpha = float(alpha)
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    d_max = int(t.degrees().max())
    if d_max and alpha > 1.0 / d_max:
        raise ValueError(f"alpha={alpha} exceeds 1/d_max={1.0 / d_max}; diagonal would go negative")
    return assemble(t, np.full(t.n_edges, alpha))


def max_degree_weights(t: Topology) -> WeightMatrix:
    d_max = int(t.degrees().max())
    return assemble(t, np.full(t.n_edges, 1.0 / (d_max + 1)))


def local_degree_weights(t: Topology) -> WeightMatrix:
    return assemble(t, 1.0 / _pairwise_max_degree(t))


def metropolis_hastings_weights(t: Topology) -> WeightMatrix:
    return assemble(t, 1.0 / (1.0 + _pairwise_max_degree(t)))


def best_constant_edge_weight(t: Topology) -> float:
    """alpha* = 2/(lam_smallest_nonzero(L) + lam_max(L))."""
    vals, _ = symmetric_eigen(laplacian(t))
    # connected graph: exactly one zero eigenvalue, last in descending order
    return float(2.0 / (vals[-2] + vals[0]))


def best_constant_weights(t: Topology) -> WeightMatrix:
    if not t.n_edges:
        return assemble(t, np.empty(0))
    return assemble(t, np.full(t.n_edges, best_constant_edge_weight(t)))


@dataclass(frozen=True)
class StrategySpec:
    """A strategy name plus its parameter map, as configs express it."""

    name: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.name not in STRATEGY_NAMES:
            raise ValueError(
                f"unknown strategy {self.name!r}; expected one of {', '.join(STRATEGY_NAMES)}"
            )
        object.__setattr__(self, "params", dict(self.params))
        allowed = _ALLOWED_PARAMS[self.name]
        unknown = set(self.params) - set(allowed)
        if unknown:
            raise ValueError(f"strategy {self.name!r} got unexpected params {sorted(unknown)}")
        if self.name == "manual_constant" and "alpha" not in self.params:
            raise ValueError("manual_constant requires an 'alpha' param")


_ALLOWED_PARAMS: dict[str, tuple[str, ...]] = {
    "manual_constant": ("alpha",),
    "max_degree": (),
    "local_degree": (),
    "metropolis_hastings": (),
    "best_constant": (),
    "fdla_optimized": ("max_iters", "step_scale", "tol", "nonnegative"),
}


def build_weights(t: Topology, spec: StrategySpec) -> WeightMatrix:
    """Dispatch to the named strategy; optimizer trace is discarded here."""
    if spec.name == "manual_constant":
        return manual_constant_weights(t, spec.params["alpha"])
    if spec.name == "max_degree":
        return max_degree_weights(t)
    if spec.name == "local_degree":
        return local_degree_weights(t)
    if spec.name == "metropolis_hastings":
        return metropolis_hastings_weights(t)
    if spec.name == "best_constant":
        return best_constant_weights(t)
    from .fdla import fdla_optimize

    w, _ = fdla_optimize(t, **spec.params)
    return w


class _WeightEstimator(BaseEstimator, TransformerMixin):
    """Shared fit/transform plumbing for the strategy estimators.

    ``fit`` takes a Topology and exposes ``weights_`` (ndarray), ``matrix_``
    (WeightMatrix) and ``slem_``.  ``transform`` applies one mixing round
    W @ X to per-node state stacked in rows.
    """

    def _build(self, t: Topology) -> WeightMatrix:
        raise NotImplementedError

    def fit(self, X: Topology, y: Any = None) -> "_WeightEstimator":
        if not isinstance(X, Topology):
            raise TypeError(f"expected a Topology, got {type(X).__name__}")
        self.matrix_ = self._build(X)
        self.weights_ = self.matrix_.entries
        self.slem_ = slem(self.matrix_)
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        x = np.asarray(X, dtype=float)
        n = self.weights_.shape[0]
        if x.shape[0] != n:
            raise ValueError(f"state has {x.shape[0]} rows, weight matrix needs {n}")
        return self.weights_ @ x


class ManualConstantWeights(_WeightEstimator):
    def __init__(self, alpha: float = 0.1):
        self.alpha = alpha

    def _build(self, t: Topology) -> WeightMatrix:
        return manual_constant_weights(t, self.alpha)


class MaxDegreeWeights(_WeightEstimator):
    def _build(self, t: Topology) -> WeightMatrix:
        return max_degree_weights(t)


class LocalDegreeWeights(_WeightEstimator):
    def _build(self, t: Topology) -> WeightMatrix:
        return local_degree_weights(t)


class MetropolisHastingsWeights(_WeightEstimator):
    def _build(self, t: Topology) -> WeightMatrix:
        return metropolis_hastings_weights(t)


class BestConstantWeights(_WeightEstimator):
    def _build(self, t: Topology) -> WeightMatrix:
        return best_constant_weights(t)


class FdlaWeights(_WeightEstimator):
    """SLEM-minimizing weights; also records the optimizer trace as trace_."""

    def __init__(
        self,
        max_iters: int = 500,
        step_scale: float = 1.0,
        tol: float = 1e-6,
        nonnegative: bool = True,
    ):
        self.max_iters = max_iters
        self.step_scale = step_scale
        self.tol = tol
        self.nonnegative = nonnegative

    def _build(self, t: Topology) -> WeightMatrix:
        from .fdla import fdla_optimize

        w, trace = fdla_optimize(
            t,
            max_iters=self.max_iters,
            step_scale=self.step_scale,
            tol=self.tol,
            nonnegative=self.nonnegative,
        )
        self.trace_ = trace
        return w
