"""Communication graphs for agent teams.

A :class:`Topology` is an undirected, connected graph on ``n_nodes`` vertices.
It fixes the sparsity pattern that every consensus weight matrix must respect.
Generators are provided for the standard families (path, cycle, star,
complete, grid, Erdos-Renyi random); experiment configs pick among them.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .exceptions import GraphConstructionError

TOPOLOGY_KINDS = ("path", "cycle", "star", "complete", "grid", "random")

_RANDOM_RETRY_BUDGET = 100


def _canonical_edges(edges) -> tuple[tuple[int, int], ...]:
    canon = set()
    for i, j in edges:
        canon.add((min(int(i), int(j)), max(int(i), int(j))))
    return tuple(sorted(canon))


@dataclass(frozen=True)
class Topology:
    """Undirected connected graph; edges are canonical ``(i, j)`` with ``i < j``."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n_nodes < 1:
            raise ValueError(f"n_nodes must be >= 1, got {self.n_nodes}")
        canon = _canonical_edges(self.edges)
        if len(canon) != len(self.edges) or canon != tuple(self.edges):
            object.__setattr__(self, "edges", canon)
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n_nodes}")
        if not is_connected(self):
            raise GraphConstructionError(
                f"graph with n={self.n_nodes}, m={len(self.edges)} is not connected"
            )

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n_nodes, dtype=int)
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_nodes, self.n_nodes))
        for i, j in self.edges:
            a[i, j] = 1.0
            a[j, i] = 1.0
        return a

    def neighbors(self, node: int) -> list[int]:
        out = []
        for i, j in self.edges:
            if i == node:
                out.append(j)
            elif j == node:
                out.append(i)
        return sorted(out)

    def to_json(self) -> str:
        return json.dumps({"n": self.n_nodes, "edges": [list(e) for e in self.edges]})

    @classmethod
    def from_json(cls, text: str) -> "Topology":
        obj = json.loads(text)
        return cls(int(obj["n"]), _canonical_edges(obj["edges"]))


def is_connected(t: Topology) -> bool:
    """Breadth-first reachability from node 0 covers every node."""
    if t.n_nodes == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(t.n_nodes)]
    for i, j in t.edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = bytearray(t.n_nodes)
    seen[0] = 1
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                queue.append(v)
    return count == t.n_nodes


def laplacian(t: Topology) -> np.ndarray:
    """Graph Laplacian L = D - A (symmetric, rows sum to zero)."""
    n = t.n_nodes
    lap = np.zeros((n, n))
    for i, j in t.edges:
        lap[i, j] = -1.0
        lap[j, i] = -1.0
        lap[i, i] += 1.0
        lap[j, j] += 1.0
    return lap


def _path_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def _cycle_edges(n):
    return _path_edges(n) + [(0, n - 1)]


def _star_edges(n):
    return [(0, i) for i in range(1, n)]


def _complete_edges(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _grid_edges(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            if c + 1 < cols:
                edges.append((u, u + 1))
            if r + 1 < rows:
                edges.append((u, u + cols))
    return edges


def _random_edges(n, p, seed):
    gen = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    draws = gen.random(n * (n - 1) // 2)
    edges = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < p:
                edges.append((i, j))
            k += 1
    return edges


def build_topology(
    kind: str,
    n: int | None = None,
    *,
    p: float | None = None,
    rows: int | None = None,
    cols: int | None = None,
    seed: int = 0,
) -> Topology:
    """Build a connected topology of the given kind.

    ``grid`` takes ``rows``/``cols`` (``n``, if given, must equal their
    product).  ``random`` is Erdos-Renyi with edge probability ``p``; it
    retries with incremented seeds until a connected sample is found, up to a
    fixed budget.
    """
    if kind not in TOPOLOGY_KINDS:
        raise ValueError(f"unknown topology kind {kind!r}; expected one of {TOPOLOGY_KINDS}")

    if kind == "grid":
        if rows is None or cols is None:
            raise ValueError("grid topology requires rows and cols")
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise ValueError(f"grid needs rows*cols >= 2, got {rows}x{cols}")
        if n is not None and n != rows * cols:
            raise ValueError(f"n={n} inconsistent with {rows}x{cols} grid")
        return Topology(rows * cols, tuple(_grid_edges(rows, cols)))

    if n is None or n < 2:
        raise ValueError(f"{kind} topology requires n >= 2, got {n}")

    if kind == "path":
        return Topology(n, tuple(_path_edges(n)))
    if kind == "cycle":
        return Topology(n, tuple(_cycle_edges(n)))
    if kind == "star":
        return Topology(n, tuple(_star_edges(n)))
    if kind == "complete":
        return Topology(n, tuple(_complete_edges(n)))

    # random
    if p is None or not (0.0 < p <= 1.0):
        raise ValueError(f"random topology requires 0 < p <= 1, got {p}")
    for attempt in range(_RANDOM_RETRY_BUDGET):
        edges = _random_edges(n, p, seed + attempt)
        cand = object.__new__(Topology)
        object.__setattr__(cand, "n_nodes", n)
        object.__setattr__(cand, "edges", tuple(edges))
        if is_connected(cand):
            return Topology(n, tuple(edges))
    raise GraphConstructionError(
        f"no connected random graph (n={n}, p={p}) within {_RANDOM_RETRY_BUDGET} seeds from {seed}"
    )
