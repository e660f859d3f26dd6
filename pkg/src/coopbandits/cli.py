"""Command-line experiment runner.

Three subcommands share one config file (see `config`):

    coopbandits graph    --config cfg.json --out dir   # weights + spectra
    coopbandits optimize --config cfg.json --out dir   # fdla matrix + trace
    coopbandits compare  --config cfg.json --out dir   # sweep, CSVs, SVG

Exit codes: 0 success, 2 config/validation error, 3 write failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import load_config, parse_config
from .exceptions import ConfigError, GraphConstructionError
from .fdla import fdla_optimize
from .reporting import (
    build_manifest,
    emit_all,
    render_chart_svg,
    render_curves_csv,
    render_spectral_csv,
    render_summary_json,
    render_trace_csv,
)
from .simulate import run_sweep, _strategy_labels
from .strategies import build_weights
from .weights import slem


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coopbandits",
        description="Cooperative bandit experiments over consensus graphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("graph", "build every configured weight matrix and report spectra"),
        ("optimize", "run the SLEM optimizer and emit its trace"),
        ("compare", "run the Monte-Carlo sweep and emit curves and charts"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=True, help="experiment config JSON")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--jobs", type=int, default=1, help="parallel trial workers")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
    return parser


def _cmd_graph(cfg, files: dict[str, str]) -> None:
    files["topology.json"] = cfg.topology.to_json() + "\n"
    spectra = []
    for spec, label in zip(cfg.strategies, _strategy_labels(cfg.strategies)):
        w = build_weights(cfg.topology, spec)
        files[f"weights_{label}.json"] = w.to_json() + "\n"
        spectra.append((label, slem(w)))
    files["spectral.csv"] = render_spectral_csv(spectra)


def _cmd_optimize(cfg, files: dict[str, str]) -> None:
    spec = next((s for s in cfg.strategies if s.name == "fdla_optimized"), None)
    if spec is None:
        raise ConfigError("optimize requires an fdla_optimized strategy in the config")
    w, trace = fdla_optimize(cfg.topology, **spec.params)
    files["weights_fdla_optimized.json"] = w.to_json() + "\n"
    files["trace.csv"] = render_trace_csv(trace)


def _cmd_compare(cfg, files: dict[str, str], jobs: int) -> None:
    if len(cfg.strategies) < 2:
        raise ConfigError("compare requires at least 2 strategies")
    sweep = run_sweep(cfg, jobs=jobs)
    for outcome in sweep:
        files[f"curves_{outcome.label}.csv"] = render_curves_csv(
            outcome.mean_error, outcome.std_error, outcome.mean_regret
        )
    files["summary.json"] = render_summary_json(sweep)
    files["chart.svg"] = render_chart_svg(sweep)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config_text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(load_config(args.config), seed_override=args.seed)
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        files: dict[str, str] = {}
        if args.command == "graph":
            _cmd_graph(cfg, files)
        elif args.command == "optimize":
            _cmd_optimize(cfg, files)
        else:
            _cmd_compare(cfg, files, args.jobs)
        files["manifest.json"] = build_manifest(config_text, files, __version__)
    except (ConfigError, GraphConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        emit_all(args.out, files)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
