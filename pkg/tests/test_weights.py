import json

import numpy as np
import pytest

from coopbandits.strategies import (
    best_constant_weights,
    manual_constant_weights,
    max_degree_weights,
    metropolis_hastings_weights,
)
from coopbandits.topology import build_topology
from coopbandits.weights import (
    WeightMatrix,
    slem,
    spectral_report,
    validate_weight_matrix,
    weight_matrix_from_json,
)


@pytest.fixture
def path3():
    return build_topology("path", 3)


def test_validate_accepts_strategy_output(path3):
    validate_weight_matrix(metropolis_hastings_weights(path3))


def test_validate_rejects_asymmetry(path3):
    e = metropolis_hastings_weights(path3).entries.copy()
    e[0, 1] += 1e-6
    with pytest.raises(ValueError, match="symmetric"):
        validate_weight_matrix(WeightMatrix(path3, e))


def test_validate_rejects_bad_row_sums(path3):
    e = metropolis_hastings_weights(path3).entries.copy()
    e[0, 0] += 1e-6
    with pytest.raises(ValueError, match="sum"):
        validate_weight_matrix(WeightMatrix(path3, e))


def test_validate_rejects_off_graph_mass(path3):
    e = metropolis_hastings_weights(path3).entries.copy()
    e[0, 2] = e[2, 0] = 1e-18  # tiny but structurally wrong
    with pytest.raises(ValueError, match="off the graph"):
        validate_weight_matrix(WeightMatrix(path3, e))


def test_entries_must_be_finite(path3):
    e = np.full((3, 3), np.inf)
    with pytest.raises(ValueError):
        WeightMatrix(path3, e)


def test_slem_uniform_complete_3_is_zero():
    t = build_topology("complete", 3)
    w = manual_constant_weights(t, 1.0 / 3.0)
    assert np.allclose(w.entries, np.full((3, 3), 1.0 / 3.0))
    assert abs(slem(w)) < 1e-12


def test_slem_metropolis_path_3_is_two_thirds(path3):
    assert abs(slem(metropolis_hastings_weights(path3)) - 2.0 / 3.0) < 1e-12


def test_slem_best_constant_path_3_is_half(path3):
    assert abs(slem(best_constant_weights(path3)) - 0.5) < 1e-12


def test_slem_agrees_with_deviation_norm_oracle():
    # independent route: spectral norm of W - J/n via LAPACK
    for kind, n in [("path", 7), ("cycle", 8), ("star", 6), ("grid", 6)]:
        t = build_topology(kind, n, rows=2, cols=3) if kind == "grid" else build_topology(kind, n)
        w = max_degree_weights(t)
        dev = w.entries - 1.0 / n
        assert abs(slem(w) - np.abs(np.linalg.eigvalsh(dev)).max()) < 1e-11


def test_spectral_report_leading_eigenvalue_is_one(path3):
    rep = spectral_report(metropolis_hastings_weights(path3))
    assert abs(rep.eigenvalues[0] - 1.0) < 1e-8
    assert rep.slem < 1.0


def test_contraction_toward_the_mean():
    rng = np.random.default_rng(5)
    for t in (build_topology("path", 9), build_topology("star", 7)):
        w = metropolis_hastings_weights(t)
        rho = slem(w)
        for _ in range(100):
            x = rng.standard_normal(t.n_nodes)
            xbar = x.mean()
            lhs = np.linalg.norm(w.entries @ x - xbar)
            rhs = rho * np.linalg.norm(x - xbar)
            assert lhs <= rhs + 1e-9


def test_average_preservation():
    rng = np.random.default_rng(6)
    t = build_topology("cycle", 11)
    w = max_degree_weights(t)
    for _ in range(50):
        x = rng.standard_normal(11)
        assert abs((w.entries @ x).mean() - x.mean()) < 1e-9


def test_json_round_trip(path3):
    w = metropolis_hastings_weights(path3)
    doc = json.loads(w.to_json())
    assert doc["n"] == 3
    back = weight_matrix_from_json(w.to_json(), path3)
    assert np.array_equal(back.entries, w.entries)


def test_json_dimension_mismatch(path3):
    w = metropolis_hastings_weights(build_topology("path", 4))
    with pytest.raises(ValueError):
        weight_matrix_from_json(w.to_json(), path3)
