import json

import pytest

from coopbandits.cli import main

_ALL_STRATEGIES = [
    {"name": "manual_constant", "params": {"alpha": 0.45}},
    {"name": "max_degree", "params": {}},
    {"name": "local_degree", "params": {}},
    {"name": "metropolis_hastings", "params": {}},
    {"name": "best_constant", "params": {}},
    {"name": "fdla_optimized", "params": {}},
]


def _write_config(tmp_path, name="cfg.json", **overrides):
    doc = {
        "topology": {"kind": "path", "n": 3},
        "strategies": [
            {"name": "max_degree", "params": {}},
            {"name": "metropolis_hastings", "params": {}},
        ],
        "bandit": {"arm_means": [0.2, 0.5, 0.9], "sigma_g": 1.0},
        "algo": {"gamma": 1.01, "eta": 1.0},
        "horizon": 40,
        "n_trials": 3,
        "seed": 11,
    }
    doc.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def _run(*argv):
    return main([str(a) for a in argv])


def test_graph_emits_known_spectra(tmp_path):
    cfg = _write_config(tmp_path, strategies=_ALL_STRATEGIES)
    out = tmp_path / "out"
    assert _run("graph", "--config", cfg, "--out", out) == 0
    lines = (out / "spectral.csv").read_text().splitlines()
    assert lines[0] == "strategy,slem"
    table = dict(line.split(",") for line in lines[1:])
    # path-3 closed forms: I - alpha*L has spectrum {1, 1-alpha, 1-3*alpha}
    assert table["manual_constant"] == "0.5500"
    assert table["max_degree"] == "0.6667"
    assert table["local_degree"] == "0.5000"
    assert table["metropolis_hastings"] == "0.6667"
    assert table["best_constant"] == "0.5000"
    assert table["fdla_optimized"] == "0.5000"
    assert (out / "topology.json").exists()
    for row in _ALL_STRATEGIES:
        assert (out / f"weights_{row['name']}.json").exists()
    assert (out / "manifest.json").exists()


def test_graph_complete_averaging_matrix_is_rank_one(tmp_path):
    cfg = _write_config(
        tmp_path,
        topology={"kind": "complete", "n": 3},
        strategies=[{"name": "manual_constant", "params": {"alpha": 1.0 / 3.0}}],
    )
    out = tmp_path / "out"
    assert _run("graph", "--config", cfg, "--out", out) == 0
    text = (out / "spectral.csv").read_text()
    assert "manual_constant,0.0000" in text


def test_optimize_trace_reaches_path3_optimum(tmp_path):
    cfg = _write_config(
        tmp_path, strategies=[{"name": "fdla_optimized", "params": {}}]
    )
    out = tmp_path / "out"
    assert _run("optimize", "--config", cfg, "--out", out) == 0
    rows = (out / "trace.csv").read_text().splitlines()
    assert rows[0] == "iter,best_slem"
    final = float(rows[-1].split(",")[1])
    assert abs(final - 0.5) <= 1e-3
    assert (out / "weights_fdla_optimized.json").exists()


def test_optimize_single_iteration_trace(tmp_path):
    cfg = _write_config(
        tmp_path,
        strategies=[{"name": "fdla_optimized", "params": {"max_iters": 1}}],
    )
    out = tmp_path / "out"
    assert _run("optimize", "--config", cfg, "--out", out) == 0
    rows = (out / "trace.csv").read_text().splitlines()
    assert len(rows) == 2  # header + one iteration


def test_compare_emits_curves_summary_chart(tmp_path):
    cfg = _write_config(tmp_path)
    out = tmp_path / "out"
    assert _run("compare", "--config", cfg, "--out", out) == 0
    for name in (
        "curves_max_degree.csv",
        "curves_metropolis_hastings.csv",
        "summary.json",
        "chart.svg",
        "manifest.json",
    ):
        assert (out / name).exists(), name
    summary = json.loads((out / "summary.json").read_text())
    assert {d["strategy"] for d in summary} == {"max_degree", "metropolis_hastings"}
    curves = (out / "curves_max_degree.csv").read_text().splitlines()
    assert len(curves) == 41  # header + horizon rows


def test_error_exit_codes(tmp_path, capsys):
    ok = _write_config(tmp_path)
    assert _run("graph", "--config", tmp_path / "absent.json", "--out", tmp_path / "o") == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert _run("graph", "--config", bad, "--out", tmp_path / "o") == 2
    zero = _write_config(tmp_path, name="zero.json", n_trials=0)
    assert _run("compare", "--config", zero, "--out", tmp_path / "o") == 2
    one = _write_config(
        tmp_path, name="one.json", strategies=[{"name": "max_degree", "params": {}}]
    )
    assert _run("compare", "--config", one, "--out", tmp_path / "o") == 2
    assert _run("optimize", "--config", one, "--out", tmp_path / "o") == 2
    assert _run("compare", "--config", ok, "--out", tmp_path / "o", "--jobs", 0) == 2
    errs = capsys.readouterr().err
    assert errs.count("error:") == 6


def test_write_failure_exits_three(tmp_path):
    cfg = _write_config(tmp_path)
    blocker = tmp_path / "blocker"
    blocker.write_text("occupied")
    assert _run("graph", "--config", cfg, "--out", blocker / "sub") == 3


def _artifact_bytes(out):
    files = {}
    for path in sorted(out.iterdir()):
        if path.name != "manifest.json":
            files[path.name] = path.read_bytes()
    return files


def _manifest_inventory(out):
    doc = json.loads((out / "manifest.json").read_text())
    return doc["config_sha256"], doc["files"]


def test_compare_reruns_are_byte_identical(tmp_path):
    cfg = _write_config(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run("compare", "--config", cfg, "--out", a) == 0
    assert _run("compare", "--config", cfg, "--out", b) == 0
    assert _artifact_bytes(a) == _artifact_bytes(b)
    assert _manifest_inventory(a) == _manifest_inventory(b)


def test_compare_jobs_do_not_change_artifacts(tmp_path):
    cfg = _write_config(tmp_path, n_trials=4)
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run("compare", "--config", cfg, "--out", a, "--jobs", 1) == 0
    assert _run("compare", "--config", cfg, "--out", b, "--jobs", 8) == 0
    assert _artifact_bytes(a) == _artifact_bytes(b)
    assert _manifest_inventory(a) == _manifest_inventory(b)


def test_seed_override_changes_curves(tmp_path):
    cfg = _write_config(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert _run("compare", "--config", cfg, "--out", a) == 0
    assert _run("compare", "--config", cfg, "--out", b, "--seed", 9999) == 0
    assert (a / "curves_max_degree.csv").read_bytes() != (
        b / "curves_max_degree.csv"
    ).read_bytes()


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
