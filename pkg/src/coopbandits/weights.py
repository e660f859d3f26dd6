"""Consensus weight matrices and their spectral measurements.

A weight matrix W is symmetric, doubly stochastic, and shares the sparsity
pattern of its topology.  Mixing speed is summarized by the SLEM — the
second-largest eigenvalue modulus, equivalently the spectral norm of the
deviation W − J/n — which is what the optimizing strategy minimizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import symmetric_eigen
from .topology import Topology

SYMMETRY_ATOL = 1e-12
STOCHASTIC_ATOL = 1e-9


@dataclass(frozen=True)
class WeightMatrix:
    """Dense symmetric averaging matrix tied to a topology."""

    topology: Topology
    entries: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        e = np.asarray(self.entries, dtype=float)
        n = self.topology.n_nodes
        if e.shape != (n, n):
            raise ValueError(f"entries shape {e.shape} does not match topology n={n}")
        if not np.all(np.isfinite(e)):
            raise ValueError("weight matrix has non-finite entries")
        object.__setattr__(self, "entries", e)

    @property
    def n(self) -> int:
        return self.topology.n_nodes

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "rows": self.entries.tolist()})


def validate_weight_matrix(w: WeightMatrix) -> None:
    """Check symmetry, row stochasticity, and exact off-graph sparsity.

    Raises ``ValueError`` naming the first violated property.  Entries may be
    negative (the optimizer's unconstrained mode produces such matrices).
    """
    e = w.entries
    n = w.n
    if np.abs(e - e.T).max() > SYMMETRY_ATOL:
        raise ValueError("weight matrix is not symmetric within 1e-12")
    rows = e.sum(axis=1)
    if np.abs(rows - 1.0).max() > STOCHASTIC_ATOL:
        raise ValueError("weight matrix rows do not sum to 1 within 1e-9")
    mask = w.topology.adjacency().astype(bool)
    np.fill_diagonal(mask, True)
    # off-graph entries must be exactly zero, not merely small
    if np.any(e[~mask] != 0.0):
        raise ValueError("weight matrix has nonzero entries off the graph")


@dataclass(frozen=True)
class SpectralReport:
    """Eigenvalues (descending) of a weight matrix plus its SLEM."""

    eigenvalues: np.ndarray = field(repr=False)
    slem: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=float))


def slem(w: WeightMatrix, tol: float = 1e-10) -> float:
    """Second-largest eigenvalue modulus, max(|λ₂|, |λ_n|).

    Computed as the spectral norm of W − J/n so the result stays meaningful
    even for iterates whose non-consensus eigenvalues stray above 1.
    """
    dev = w.entries - 1.0 / w.n
    vals, _ = symmetric_eigen(dev, tol=tol)
    return float(np.abs(vals).max()) if w.n > 1 else 0.0


def spectral_report(w: WeightMatrix, tol: float = 1e-10) -> SpectralReport:
    vals, _ = symmetric_eigen(w.entries, tol=tol)
    return SpectralReport(eigenvalues=vals, slem=slem(w, tol=tol))


def weight_matrix_from_json(text: str, topology: Topology) -> WeightMatrix:
    doc = json.loads(text)
    if doc.get("n") != topology.n_nodes:
        raise ValueError("serialized matrix dimension does not match topology")
    return WeightMatrix(topology=topology, entries=np.array(doc["rows"], dtype=float))
