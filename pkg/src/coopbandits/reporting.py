"""Artifact rendering: CSV tables, JSON summaries, SVG charts, manifests.

Renderers return complete text; `emit` writes it UTF-8 with the "\n" line
endings already embedded.  Floats are serialized with repr (shortest
round-trip form) except where a fixed rounding is part of the format, so
identical runs produce byte-identical artifacts.
"""

from __future__ import annotations

import hashlib
import json
import time
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .fdla import OptimizationTrace
from .simulate import SweepResult

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


def _fnum(x: float) -> str:
    return repr(float(x))


def render_spectral_csv(rows: Iterable[tuple[str, float]]) -> str:
    lines = ["strategy,slem"]
    lines += [f"{name},{value:.4f}" for name, value in rows]
    return "\n".join(lines) + "\n"


def render_trace_csv(trace: OptimizationTrace) -> str:
    lines = ["iter,best_slem"]
    lines += [
        f"{int(i)},{_fnum(v)}" for i, v in zip(trace.iterations, trace.best_slem)
    ]
    return "\n".join(lines) + "\n"


def render_curves_csv(
    mean_error: np.ndarray, std_error: np.ndarray, mean_regret: np.ndarray
) -> str:
    lines = ["t,mean_error,std_error,mean_regret"]
    lines += [
        f"{t + 1},{_fnum(e)},{_fnum(s)},{_fnum(r)}"
        for t, (e, s, r) in enumerate(zip(mean_error, std_error, mean_regret))
    ]
    return "\n".join(lines) + "\n"


def render_summary_json(sweep: SweepResult) -> str:
    entries = [
        {
            "strategy": o.label,
            "convergence_time": o.convergence_time,
            "final_error": o.final_error,
        }
        for o in sweep
    ]
    return json.dumps(entries, indent=2) + "\n"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def render_chart_svg(sweep: SweepResult, title: str = "Team-average best-arm error") -> str:
    """Static line chart: one polyline per strategy, dashed vertical line at
    each convergence time, legend on the right.  Self-contained XML."""
    width, height = 880.0, 520.0
    left, right, top, bottom = 70.0, 200.0, 40.0, 50.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    horizon = max(len(o.mean_error) for o in sweep.outcomes)
    y_max = max(float(o.mean_error.max()) for o in sweep.outcomes)
    if y_max <= 0.0:
        y_max = 1.0
    y_max *= 1.05

    def sx(t: float) -> float:  # timestep (1-based) -> pixel
        return left + plot_w * (t - 1) / max(horizon - 1, 1)

    def sy(v: float) -> float:
        return top + plot_h * (1.0 - v / y_max)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{left:.1f}" y="{top - 16:.1f}" font-family="sans-serif" font-size="15">'
        f"{title}</text>",
        f'<line x1="{left:.1f}" y1="{top + plot_h:.1f}" x2="{left + plot_w:.1f}" '
        f'y2="{top + plot_h:.1f}" stroke="black"/>',
        f'<line x1="{left:.1f}" y1="{top:.1f}" x2="{left:.1f}" y2="{top + plot_h:.1f}" '
        f'stroke="black"/>',
    ]
    for tv in _ticks(1, horizon):
        x = sx(tv)
        parts.append(
            f'<line x1="{x:.2f}" y1="{top + plot_h:.1f}" x2="{x:.2f}" '
            f'y2="{top + plot_h + 5:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 20:.1f}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{tv:.0f}</text>'
        )
    for yv in _ticks(0.0, y_max):
        y = sy(yv)
        parts.append(
            f'<line x1="{left - 5:.1f}" y1="{y:.2f}" x2="{left:.1f}" y2="{y:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 9:.1f}" y="{y + 4:.2f}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{yv:.3g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 12:.1f}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle">t</text>'
    )

    for i, o in enumerate(sweep.outcomes):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{sx(t + 1):.2f},{sy(min(float(v), y_max)):.2f}"
            for t, v in enumerate(o.mean_error)
        )
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        if o.convergence_time is not None:
            x = sx(o.convergence_time)
            parts.append(
                f'<line x1="{x:.2f}" y1="{top:.1f}" x2="{x:.2f}" y2="{top + plot_h:.1f}" '
                f'stroke="{color}" stroke-width="1" stroke-dasharray="6 4"/>'
            )
        ly = top + 16 + 20 * i
        lx = left + plot_w + 14
        parts.append(
            f'<line x1="{lx:.1f}" y1="{ly - 4:.1f}" x2="{lx + 22:.1f}" y2="{ly - 4:.1f}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        ct = f"t={o.convergence_time}" if o.convergence_time is not None else "n/a"
        parts.append(
            f'<text x="{lx + 28:.1f}" y="{ly:.1f}" font-family="sans-serif" font-size="12">'
            f"{o.label} ({ct})</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_manifest(config_text: str, files: dict[str, str], version: str) -> str:
    inventory = [
        {"name": name, "bytes": len(text.encode("utf-8")), "sha256": sha256_hex(text)}
        for name, text in sorted(files.items())
    ]
    doc = {
        "config_sha256": sha256_hex(config_text),
        "tool_version": version,
        "created_unix": int(time.time()),
        "files": inventory,
    }
    return json.dumps(doc, indent=2) + "\n"


def emit(out_dir: str | Path, name: str, text: str) -> Path:
    path = Path(out_dir) / name
    path.write_text(text, encoding="utf-8", newline="")
    return path


def emit_all(out_dir: str | Path, files: dict[str, str]) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [emit(out, name, text) for name, text in files.items()]
