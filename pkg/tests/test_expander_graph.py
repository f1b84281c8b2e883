import numpy as np
import pytest

from tanner_lcc.graphs.expander_graph import (RegularGraph, complete_graph, cycle_graph, double_cover,
                                              edge_walk_spectrum_check, leaf_distribution_check,
                                              ramanujan_bound, random_regular, random_walk,
                                              second_eigenvalue, spectrum_dense)


def test_complete_graph_rotation():
    g = complete_graph(4)
    assert g.neighbours.tolist() == [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    half = np.arange(12)
    assert (g.rotation[g.rotation] == half).all()
    # port 0 of vertex 1 leads to vertex 0 and arrives on its port 0
    assert g.rotation[3] == 0


def test_k4_and_c6_lambda():
    assert second_eigenvalue(complete_graph(4)) == pytest.approx(1.0 / 3.0, abs=1e-7)
    assert second_eigenvalue(cycle_graph(6)) == pytest.approx(1.0, abs=1e-6)


def test_lambda_matches_dense_solver():
    g = random_regular(30, 6, 3)
    lam = g.second_eigenvalue()
    mu = spectrum_dense(g)
    assert lam == pytest.approx(max(abs(mu[1]), abs(mu[-1])), abs=1e-5)
    assert g.lam == lam


def test_ramanujan_bound():
    assert ramanujan_bound(16) == pytest.approx(0.48412, abs=1e-5)


def test_random_regular_is_simple_and_reproducible():
    a = random_regular(50, 8, 42)
    b = random_regular(50, 8, 42)
    assert a.fingerprint() == b.fingerprint()
    assert (np.sort(a.neighbours, axis=1) == a.neighbours).all()
    assert not (a.neighbours == np.arange(50)[:, None]).any()
    assert len(a.edges()) == 50 * 8 // 2


def test_random_regular_rejects_impossible_parameters():
    with pytest.raises(ValueError):
        random_regular(5, 3, 0)
    with pytest.raises(ValueError):
        random_regular(4, 4, 0)


def test_rotation_validation():
    with pytest.raises(ValueError):
        RegularGraph(2, 1, [0, 1])
    with pytest.raises(ValueError):
        RegularGraph.from_edges(3, [(0, 1), (1, 2)])


def test_graph_round_trip_keeps_lambda():
    g = complete_graph(5)
    g.second_eigenvalue()
    back = RegularGraph.from_dict(g.to_dict())
    assert back.fingerprint() == g.fingerprint()
    assert back.lam == g.lam


def test_double_cover_endpoints():
    cover = double_cover(random_regular(12, 4, 1))
    e = np.arange(cover.N)
    for side in (0, 1):
        vertex, port = cover.endpoint(e, side)
        assert (cover.edge_at(vertex, port, side) == e).all()
    for v in range(cover.n):
        assert sorted(cover.incident(1, v).tolist()) == sorted(
            (cover.rotation[cover.incident(0, v)]).tolist())
    v, port = cover.endpoint(5, 1)
    assert cover.right(5) == (int(v), int(port))


def test_random_walks_follow_edges():
    graph = random_regular(20, 4, 9)
    cover = double_cover(graph)
    vertices, edges = random_walk(cover, 'uniform', 7, np.random.default_rng(0), trials=50)
    assert vertices.shape == (50, 8)
    assert edges.shape == (50, 7)
    for t in range(7):
        side = t % 2
        start, _ = cover.endpoint(edges[:, t], side)
        end, _ = cover.endpoint(edges[:, t], 1 - side)
        assert (start == vertices[:, t]).all()
        assert (end == vertices[:, t + 1]).all()


def test_point_start_walk():
    cover = double_cover(complete_graph(5))
    vertices, _ = random_walk(cover, 3, 4, np.random.default_rng(1))
    assert vertices[0] == 3
    assert vertices.shape == (5,)


def test_leaf_distribution_claim():
    graph = random_regular(40, 8, 2)
    distance, bound, holds = leaf_distribution_check(graph, 0, 4)
    assert holds
    assert distance <= bound + 1e-12


@pytest.mark.parametrize('graph', [complete_graph(4), cycle_graph(6), random_regular(10, 4, 0)],
                         ids=['K4', 'C6', 'random_10_4'])
def test_edge_walk_spectrum(graph):
    check = edge_walk_spectrum_check(graph)
    assert check.operator_matches
    assert check.ok
    assert check.rank_r <= graph.n
