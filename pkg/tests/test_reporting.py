import hashlib
import json
import time
import xml.etree.ElementTree as ET

import numpy as np

from coopbandits.fdla import OptimizationTrace
from coopbandits.reporting import (
    build_manifest,
    emit_all,
    render_chart_svg,
    render_curves_csv,
    render_spectral_csv,
    render_summary_json,
    render_trace_csv,
    sha256_hex,
)
from coopbandits.simulate import StrategyOutcome, SweepResult
from coopbandits.strategies import StrategySpec


def _outcome(label, errors, ct):
    e = np.asarray(errors, dtype=float)
    return StrategyOutcome(
        spec=StrategySpec("max_degree"),
        label=label,
        mean_error=e,
        std_error=np.zeros_like(e),
        mean_regret=np.cumsum(e),
        convergence_time=ct,
    )


def _sweep():
    return SweepResult(
        (
            _outcome("max_degree", [1.0, 0.4, 0.1, 0.02], 3),
            _outcome("fdla_optimized", [1.0, 0.2, 0.05, 0.01], None),
        )
    )


def test_spectral_csv_rounds_to_four_decimals():
    text = render_spectral_csv([("metropolis_hastings", 2.0 / 3.0), ("fdla", 0.5)])
    assert text == "strategy,slem\nmetropolis_hastings,0.6667\nfdla,0.5000\n"


def test_trace_csv_round_trips_full_precision():
    vals = [0.1 + 0.2, 1.0 / 3.0, 0.7071067811865476]
    trace = OptimizationTrace(np.arange(1, 4), np.array(vals))
    text = render_trace_csv(trace)
    lines = text.splitlines()
    assert lines[0] == "iter,best_slem"
    for line, k, v in zip(lines[1:], range(1, 4), vals):
        it, sv = line.split(",")
        assert int(it) == k
        assert float(sv) == v  # repr serialization is lossless


def test_curves_csv_is_one_based_and_lossless():
    e = np.array([0.3, 0.1 + 0.2])
    s = np.array([0.01, 1.0 / 7.0])
    r = np.array([0.5, 1.25])
    text = render_curves_csv(e, s, r)
    lines = text.splitlines()
    assert lines[0] == "t,mean_error,std_error,mean_regret"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "1"
    parsed = [line.split(",") for line in lines[1:]]
    assert [float(row[1]) for row in parsed] == list(e)
    assert [float(row[2]) for row in parsed] == list(s)
    assert [float(row[3]) for row in parsed] == list(r)
    assert text.endswith("\n") and "\r" not in text


def test_summary_json_fields():
    doc = json.loads(render_summary_json(_sweep()))
    assert [d["strategy"] for d in doc] == ["max_degree", "fdla_optimized"]
    assert doc[0]["convergence_time"] == 3
    assert doc[1]["convergence_time"] is None
    assert doc[0]["final_error"] == 0.02
    assert doc[1]["final_error"] == 0.01


def test_chart_is_wellformed_self_contained_svg():
    text = render_chart_svg(_sweep())
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    ns = "{http://www.w3.org/2000/svg}"
    polylines = root.findall(f"{ns}polyline")
    assert len(polylines) == 2
    dashed = [
        el for el in root.findall(f"{ns}line") if el.get("stroke-dasharray") is not None
    ]
    assert len(dashed) == 1  # only the strategy with a convergence time
    texts = [el.text or "" for el in root.findall(f"{ns}text")]
    assert any("max_degree (t=3)" in s for s in texts)
    assert any("fdla_optimized (n/a)" in s for s in texts)
    # self-contained: no external fetches
    assert "href" not in text and "url(" not in text


def test_chart_handles_flat_zero_curves():
    sweep = SweepResult((_outcome("max_degree", [0.0, 0.0, 0.0], 1),))
    ET.fromstring(render_chart_svg(sweep))


def test_sha256_hex_known_vector():
    assert (
        sha256_hex("abc")
        == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    )


def test_manifest_inventory():
    files = {"b.csv": "x,y\n1,2\n", "a.json": "{}\n"}
    before = int(time.time())
    doc = json.loads(build_manifest('{"seed": 1}', files, "0.1.0"))
    after = int(time.time())
    assert doc["config_sha256"] == sha256_hex('{"seed": 1}')
    assert doc["tool_version"] == "0.1.0"
    assert before <= doc["created_unix"] <= after
    assert [f["name"] for f in doc["files"]] == ["a.json", "b.csv"]
    for entry in doc["files"]:
        raw = files[entry["name"]].encode("utf-8")
        assert entry["bytes"] == len(raw)
        assert entry["sha256"] == hashlib.sha256(raw).hexdigest()


def test_emit_all_writes_exact_bytes(tmp_path):
    out = tmp_path / "nested" / "run"
    files = {"a.csv": "t,v\n1,0.5\n", "b.txt": "line\n"}
    paths = emit_all(out, files)
    assert sorted(p.name for p in paths) == ["a.csv", "b.txt"]
    for name, text in files.items():
        assert (out / name).read_bytes() == text.encode("utf-8")
