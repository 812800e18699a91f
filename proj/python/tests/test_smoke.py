import math

import numpy as np
import pytest

import sbmwalk


def two_block(n=40, rho=0.5):
    return sbmwalk.build_block_model(2, sbmwalk.balanced_block_sizes(n, 2), [[0.9, 0.3], [0.3, 0.9]], rho)


def test_model_and_probabilities():
    model = two_block(10, 0.5)
    assert model.node_count == 10
    P = sbmwalk.edge_probability_matrix(model)
    assert P.shape == (10, 10)
    assert P[0, 1] == pytest.approx(0.45)
    assert P[0, 9] == pytest.approx(0.15)
    with pytest.raises(ValueError):
        sbmwalk.build_block_model(2, [5, 5], [[0.9, 0.3], [0.4, 0.9]], 0.5)


def test_sampled_graph_is_simple():
    g = sbmwalk.sample_graph(two_block(), seed=3)
    A = g.dense_adjacency()
    assert np.array_equal(A, A.T)
    assert not A.diagonal().any()
    assert A.sum() == g.two_m
    assert g.degrees() == list(A.sum(axis=1).astype(int))


def test_walks_and_counts():
    g = sbmwalk.Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    walks = sbmwalk.node2vec_walks(g, r=50, l=6, alpha=0.5, seed=1)
    assert walks.shape == (50, 6) and walks.dtype == np.uint32
    C = sbmwalk.cooccurrence(walks, 3, 1, 2)
    assert np.array_equal(C, C.T)
    assert C.sum() == 2 * 50 * sbmwalk.window_gamma(6, 1, 2)
    M = sbmwalk.empirical_m(C)
    assert M.entries.shape == (3, 3)


def test_limit_m_on_triangle():
    g = sbmwalk.Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    M = sbmwalk.graph_m(g, "deepwalk", 2, 2, 10)
    assert M.entries[0, 1] == pytest.approx(math.log(0.75))
    assert M.entries[0, 0] == pytest.approx(math.log(1.5))
    assert M.masked_count == 0
    assert M.mask.dtype == np.bool_


def test_spectral_recovery_on_noiseless_matrix():
    model = two_block(60, 0.3)
    truth = sbmwalk.grouped_labels(model)
    M0 = sbmwalk.noiseless_m0(model, "node2vec", 3, 3, 10, alpha=1 / 60)
    values, vectors = sbmwalk.top_k_eigen(M0.entries, 2)
    assert vectors.shape == (60, 2)
    assert abs(values[0]) >= abs(values[1])
    result = sbmwalk.spectral_cluster(M0.entries, 2, seed=4)
    assert sbmwalk.misclassification_rate(result.labels, truth, 2) == 0.0
    assert sbmwalk.misclassification_rate([1, 1, 0, 0], [0, 0, 1, 1], 2) == 0.0


def test_experiment_rows_and_csv():
    config = """
n = 30
rho = 0.5
K = 2
B0 = 0.9 0.3
B0 = 0.3 0.9
kernel = deepwalk node2vec
alpha = 1/n
node2vec.t_L = 3
node2vec.t_U = 3
seed_range = 1 2
restarts = 4
"""
    rows = sbmwalk.run_experiment(config)
    assert len(rows) == 4
    assert rows[0]["kernel"] == "deepwalk" and rows[2]["kernel"] == "node2vec"
    assert all(0.0 <= r["err"] <= 1.0 for r in rows)
    csv = sbmwalk.experiment_csv(config)
    assert csv.splitlines()[0] == sbmwalk.CSV_HEADER
    assert csv == sbmwalk.experiment_csv(config)
    with pytest.raises(ValueError, match="config line"):
        sbmwalk.run_experiment("n = 10\nbogus = 1\n")


def test_regime_helpers():
    assert [sbmwalk.compute_phi(t) for t in (2, 3, 6)] == [0, 1, 3]
    assert sbmwalk.regime_label("deepwalk", 400, 400 ** -0.9, 3, 3) == "failure"


def test_oracle_check_runs():
    checks = sbmwalk.oracle_check(samples=200, seed=2)
    by_name = {c["name"].split(" ")[0]: c for c in checks}
    assert by_name["walk"]["violations"] == 0
    assert all(c["checked"] > 0 for c in checks)
