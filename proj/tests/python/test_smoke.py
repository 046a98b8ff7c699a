import numpy as np
import pytest

import _trinet as tn


@pytest.fixture
def path_graph():
    return tn.Graph(4, [(0, 1), (1, 2), (2, 3)])


def test_graph_basics(path_graph):
    assert path_graph.n == 4
    assert path_graph.edge_count() == 3
    assert path_graph.has_edge(1, 2)
    assert not path_graph.has_edge(0, 3)
    assert path_graph.degree(1) == 2


def test_node_diagrams_and_wasserstein(path_graph):
    diagrams = tn.node_diagrams(path_graph, filtration="degree", k=1)
    assert len(diagrams) == 4
    # endpoints have isomorphic 1-hop neighborhoods
    assert tn.wasserstein(diagrams[0], diagrams[3]) == pytest.approx(0.0)
    assert tn.wasserstein(diagrams[0], diagrams[1]) >= 0.0


def test_pairwise_distances(path_graph):
    dm = tn.pairwise_distances(path_graph, filtration="degree", k=1)
    assert dm.shape == (4, 4)
    assert np.allclose(dm, dm.T)
    assert np.allclose(np.diag(dm), 0.0)


def test_rewire_identity(path_graph):
    dm = np.full((4, 4), 2.0)
    np.fill_diagonal(dm, 0.0)
    joint, added, removed = tn.rewire(path_graph, dm, eps1=0.5, eps2=10.0)
    assert added == 0 and removed == 0
    assert joint.edge_count() == path_graph.edge_count()


def test_quantile_thresholds():
    dm = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 3.0], [2.0, 3.0, 0.0]])
    e1, e2 = tn.quantile_thresholds(dm, 0.0, 1.0)
    assert e1 == pytest.approx(1.0)
    assert e2 == pytest.approx(3.0)


def test_stan_update():
    g = tn.planted_partition(n=20, p_in=0.4, p_out=0.1, feature_dim=3, seed=1)
    dm = tn.pairwise_distances(g, filtration="attribute", k=1)
    out = tn.stan_update(g, dm, iterations=1, alpha=0.1)
    assert out.shape == g.features.shape
    assert np.isfinite(out).all()


def test_pipeline_deterministic():
    g = tn.planted_partition(n=24, p_in=0.4, p_out=0.08, feature_dim=4, seed=2)
    kwargs = dict(variant="full", seed=5, epochs=15, hidden=8)
    rep_a, added_a, removed_a, e1_a, e2_a = tn.run_pipeline(g, **kwargs)
    rep_b, added_b, removed_b, e1_b, e2_b = tn.run_pipeline(g, **kwargs)
    assert rep_a.test_acc == rep_b.test_acc
    assert rep_a.final_loss == rep_b.final_loss
    assert (added_a, removed_a, e1_a, e2_a) == (added_b, removed_b, e1_b, e2_b)
    assert 0.0 <= rep_a.test_acc <= 1.0


def test_random_attack():
    g = tn.planted_partition(n=30, p_in=0.3, p_out=0.05, seed=3)
    attacked = tn.random_attack(g, ratio=0.5, seed=4)
    expected = g.edge_count() + round(0.5 * g.edge_count())
    assert attacked.edge_count() == expected


def test_stability_and_connectivity():
    g = tn.Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    rep = tn.check_degree_stability(g, g, 1, 0.5, 2.0)
    assert rep.local_distance == pytest.approx(0.0)
    assert rep.alpha_plus == pytest.approx(rep.alpha_minus)
    assert tn.algebraic_connectivity(g) == pytest.approx(2.0)
    assert tn.local_k_distance(g, g, 1) == pytest.approx(0.0)
