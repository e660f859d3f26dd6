"""Experiment config ingestion and validation.

One JSON document drives every CLI subcommand:

    {
      "topology":   {"kind": str, "n": int, "p"?: real, "rows"?: int, "cols"?: int},
      "strategies": [{"name": str, "params": {...}}, ...],
      "bandit":     {"arm_means": [real, ...], "sigma_g": real},
      "algo":       {"gamma": real, "eta": real},
      "horizon":    int,
      "n_trials":   int,
      "seed":       int
    }

Anything malformed raises ConfigError with a dotted-path message; the CLI
maps that to exit code 2.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .bandit import BanditModel
from .exceptions import ConfigError, GraphConstructionError
from .simulate import ExperimentConfig
from .strategies import StrategySpec
from .topology import TOPOLOGY_KINDS, build_topology
from .ucb import AlgoParams

_TOP_KEYS = {"topology", "strategies", "bandit", "algo", "horizon", "n_trials", "seed"}
_TOPOLOGY_KEYS = {"kind", "n", "p", "rows", "cols"}


def _require(doc: dict, key: str, where: str) -> Any:
    if key not in doc:
        raise ConfigError(f"missing key {where}{key}")
    return doc[key]


def _as_int(value: Any, where: str, minimum: int | None = None) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where} must be an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where} must be >= {minimum}")
    return value


def _as_real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number")
    return float(value)


def load_config(path: str | Path) -> dict:
    """Read and JSON-parse a config file; any failure is a ConfigError."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return doc


def parse_config(doc: dict, seed_override: int | None = None) -> ExperimentConfig:
    """Validate a raw config document and assemble the experiment objects."""
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    for key in _TOP_KEYS:
        _require(doc, key, "")

    seed = _as_int(doc["seed"], "seed", minimum=0)
    if seed_override is not None:
        seed = _as_int(seed_override, "--seed", minimum=0)

    topo_doc = doc["topology"]
    if not isinstance(topo_doc, dict):
        raise ConfigError("topology must be an object")
    unknown = set(topo_doc) - _TOPOLOGY_KEYS
    if unknown:
        raise ConfigError(f"unknown topology keys {sorted(unknown)}")
    kind = _require(topo_doc, "kind", "topology.")
    if kind not in TOPOLOGY_KINDS:
        raise ConfigError(f"topology.kind must be one of {', '.join(TOPOLOGY_KINDS)}")
    n = _as_int(_require(topo_doc, "n", "topology."), "topology.n", minimum=1)
    kwargs: dict[str, Any] = {}
    if kind == "random":
        p = _as_real(_require(topo_doc, "p", "topology."), "topology.p")
        if not 0.0 < p <= 1.0:
            raise ConfigError("topology.p must be in (0, 1]")
        kwargs["p"] = p
        kwargs["seed"] = seed
    if kind == "grid":
        kwargs["rows"] = _as_int(_require(topo_doc, "rows", "topology."), "topology.rows", 1)
        kwargs["cols"] = _as_int(_require(topo_doc, "cols", "topology."), "topology.cols", 1)
    try:
        topology = build_topology(kind, n, **kwargs)
    except (GraphConstructionError, ValueError) as exc:
        raise ConfigError(f"topology: {exc}") from exc

    strat_doc = doc["strategies"]
    if not isinstance(strat_doc, list) or not strat_doc:
        raise ConfigError("strategies must be a non-empty array")
    specs = []
    for i, entry in enumerate(strat_doc):
        where = f"strategies[{i}]"
        if not isinstance(entry, dict) or set(entry) - {"name", "params"}:
            raise ConfigError(f"{where} must be an object with keys name, params")
        name = _require(entry, "name", where + ".")
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError(f"{where}.params must be an object")
        try:
            specs.append(StrategySpec(name=name, params=params))
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from exc

    bandit_doc = doc["bandit"]
    if not isinstance(bandit_doc, dict) or set(bandit_doc) - {"arm_means", "sigma_g"}:
        raise ConfigError("bandit must be an object with keys arm_means, sigma_g")
    means = _require(bandit_doc, "arm_means", "bandit.")
    if not isinstance(means, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in means
    ):
        raise ConfigError("bandit.arm_means must be an array of numbers")
    sigma_g = _as_real(_require(bandit_doc, "sigma_g", "bandit."), "bandit.sigma_g")
    try:
        bandit = BanditModel(arm_means=np.array(means, dtype=float), sigma_g=sigma_g)
    except ValueError as exc:
        raise ConfigError(f"bandit: {exc}") from exc

    algo_doc = doc["algo"]
    if not isinstance(algo_doc, dict) or set(algo_doc) - {"gamma", "eta"}:
        raise ConfigError("algo must be an object with keys gamma, eta")
    try:
        algo = AlgoParams(
            gamma=_as_real(_require(algo_doc, "gamma", "algo."), "algo.gamma"),
            eta=_as_real(_require(algo_doc, "eta", "algo."), "algo.eta"),
            sigma_g=bandit.sigma_g,
        )
    except ValueError as exc:
        raise ConfigError(f"algo: {exc}") from exc

    try:
        return ExperimentConfig(
            topology=topology,
            strategies=tuple(specs),
            bandit=bandit,
            algo=algo,
            horizon=_as_int(doc["horizon"], "horizon", minimum=1),
            n_trials=_as_int(doc["n_trials"], "n_trials", minimum=1),
            seed=seed,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
