from fractions import Fraction

import numpy as np
import pytest

from tanner_lcc.local_corrector.trees import (EvaluatedTree, QueryTree, evaluate_tree, fold_labels,
                                              make_tree, node_count, tree_distance,
                                              worst_path_disagreement)


def test_node_counts():
    assert node_count(3, 2) == 13
    assert node_count(4, 0) == 1
    assert node_count(1, 5) == 6


def test_children_sit_on_the_active_vertex(parity_gf3, rng):
    code = parity_gf3
    tree = make_tree(code, 17, 3, rng)
    assert tree.q == 4
    assert tree.size == node_count(4, 3)
    assert tree.root == 17
    sides = tree.sides()
    child = tree.child_index()
    for k in range(tree.internal):
        vertex, _ = code.cover.endpoint(tree.edges[k], sides[k])
        kids, _ = code.cover.endpoint(tree.edges[child[k]], sides[k])
        assert (kids == vertex).all()


def test_codeword_trees_are_consistent(parity_gf3, rng):
    code = parity_gf3
    c = code.random_codeword(rng)
    for e0 in (0, 11, 39):
        tree = make_tree(code, e0, 3, rng)
        tau = evaluate_tree(tree, c, code.p)
        assert tau.is_locally_consistent()
        assert tau.root == c[e0]
        folded = fold_labels(tree, tau.labels[tree.internal:], code.p)
        assert (folded.labels == tau.labels).all()


def test_corrupted_root_is_inconsistent(parity_gf3, rng):
    code = parity_gf3
    tree = make_tree(code, 5, 1, rng)
    word = code.zero_codeword()
    word[5] = 1
    tau = evaluate_tree(tree, word, code.p)
    assert not tau.is_locally_consistent()
    assert 0 in tau.inconsistent_nodes().tolist()


def test_tree_shape_does_not_depend_on_the_word(parity_gf3):
    a = make_tree(parity_gf3, 3, 2, np.random.default_rng(8))
    b = make_tree(parity_gf3, 3, 2, np.random.default_rng(8))
    assert (a.edges == b.edges).all()
    assert (a.coeffs == b.coeffs).all()


def _chain(labels):
    shape = QueryTree(1, len(labels) - 1, np.arange(len(labels)), np.ones((len(labels) - 1, 1)))
    return EvaluatedTree(shape, labels, 2)


def test_tree_distance():
    sigma = _chain([1, 1, 1])
    nu = _chain([0, 1, 0])
    assert worst_path_disagreement(sigma, nu) == 2
    assert tree_distance(sigma, nu) == Fraction(2, 3)
    assert tree_distance(sigma, sigma) == 0


def test_distance_needs_equal_shapes():
    shape = QueryTree(2, 1, [0, 1, 2], [[1, 1]])
    with pytest.raises(ValueError):
        worst_path_disagreement(_chain([0, 0]), EvaluatedTree(shape, [0, 0, 0], 2))


def test_bad_tree_sizes():
    with pytest.raises(ValueError):
        QueryTree(2, 1, [0, 1], [[1, 1]])
    with pytest.raises(ValueError):
        QueryTree(2, 1, [0, 1, 2], np.zeros((0, 2)))
