""" Query trees

Trees are complete q-ary trees stored in level order: node k has children
k*q + 1 .. k*q + q, so level t starts at index (q^t - 1)/(q - 1). Every
node carries an edge id of the double cover. Nodes at even depth act at
the left endpoint of their edge, nodes at odd depth at the right endpoint;
the children of a node are the queries the inner scheme issues at that
vertex for the node's port, so every root-to-leaf path is a walk on H.
"""
from fractions import Fraction

import numpy as np


def level_sizes(q, depth):
    return [q ** t for t in range(depth + 1)]


def node_count(q, depth):
    return sum(level_sizes(q, depth))


def children(q, k):
    return np.arange(k * q + 1, k * q + q + 1)


class QueryTree(object):
    """ Unevaluated tree of edge ids.

    :param q: arity
    :param depth: number of edge levels below the root
    :param edges: node edge ids in level order
    :param coeffs: (internal nodes, q) reconstruction coefficients; pads carry 0
    """

    def __init__(self, q, depth, edges, coeffs):
        self.q = q
        self.depth = depth
        self.edges = np.asarray(edges, dtype=np.int64)
        self.coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, q)
        self.size = node_count(q, depth)
        self.internal = self.size - q ** depth
        if self.edges.shape != (self.size,):
            raise ValueError('expected {} nodes, got {}'.format(self.size, self.edges.shape))
        if self.coeffs.shape[0] != self.internal:
            raise ValueError('expected coefficients for {} internal nodes'.format(self.internal))

    @property
    def root(self):
        return int(self.edges[0])

    @property
    def leaf_edges(self):
        return self.edges[self.internal:]

    def sides(self):
        """ Active side (0 left, 1 right) of every node.
        """
        out = np.empty(self.size, dtype=np.int64)
        start = 0
        for t, size in enumerate(level_sizes(self.q, self.depth)):
            out[start:start + size] = t % 2
            start += size
        return out

    def child_index(self):
        """ (internal nodes, q) array of child node indices.
        """
        k = np.arange(self.internal)
        return k[:, None] * self.q + 1 + np.arange(self.q)[None, :]

    def __repr__(self):
        return '<QueryTree q={} depth={} root={}>'.format(self.q, self.depth, self.root)


class EvaluatedTree(object):
    """ A tree shape with symbols at its nodes.
    """

    def __init__(self, shape, labels, p):
        self.shape = shape
        self.labels = np.asarray(labels, dtype=np.int64)
        self.p = p
        if self.labels.shape != (shape.size,):
            raise ValueError('expected {} labels, got {}'.format(shape.size, self.labels.shape))

    @property
    def q(self):
        return self.shape.q

    @property
    def depth(self):
        return self.shape.depth

    @property
    def root(self):
        return int(self.labels[0])

    def reconstructed(self):
        """ Label each internal node would get from its children.
        """
        child = self.labels[self.shape.child_index()]
        return (child * self.shape.coeffs).sum(axis=1) % self.p

    def is_locally_consistent(self):
        if self.shape.internal == 0:
            return True
        return bool(np.all(self.reconstructed() == self.labels[:self.shape.internal]))

    def inconsistent_nodes(self):
        if self.shape.internal == 0:
            return np.zeros(0, dtype=np.int64)
        return np.nonzero(self.reconstructed() != self.labels[:self.shape.internal])[0]


def make_tree(code, e0, depth, rng, recon=None):
    """ Grow a query tree from edge e0 without reading any symbol.

    :param code: TannerCode
    :param recon: inner scheme, default the perfectly smooth padded one
    """
    recon = code.inner.padded if recon is None else recon
    cover = code.cover
    q = recon.q0
    levels = [np.array([int(e0)], dtype=np.int64)]
    coeff_levels = []
    for t in range(depth):
        side = t % 2
        vertex, port = cover.endpoint(levels[-1], side)
        positions, coeffs = recon.sample_many(port, rng)
        levels.append(cover.edge_at(vertex[:, None], positions, side).ravel())
        coeff_levels.append(coeffs.reshape(-1, q))
    coeffs = np.concatenate(coeff_levels) if coeff_levels else np.zeros((0, q), dtype=np.int64)
    return QueryTree(q, depth, np.concatenate(levels), coeffs)


def evaluate_tree(tree, word, p):
    """ Read the word at every node edge. One read per node.
    """
    return EvaluatedTree(tree, np.asarray(word, dtype=np.int64)[tree.edges], p)


def fold_labels(tree, leaf_labels, p):
    """ Label every internal node from the leaves up with the tree's coefficients.
    """
    labels = np.zeros(tree.size, dtype=np.int64)
    labels[tree.internal:] = leaf_labels
    child = tree.child_index()
    start = tree.internal
    for t in range(tree.depth - 1, -1, -1):
        size = tree.q ** t
        lo = start - size
        ks = np.arange(lo, start)
        labels[ks] = (labels[child[ks]] * tree.coeffs[ks]).sum(axis=1) % p
        start = lo
    return EvaluatedTree(tree, labels, p)


def worst_path_disagreement(sigma, nu):
    """ Largest number of disagreeing nodes on a root-to-leaf path.
    """
    if sigma.shape.size != nu.shape.size or sigma.q != nu.q:
        raise ValueError('trees have different shapes')
    mism = (sigma.labels != nu.labels).astype(np.int64)
    best = mism.copy()
    child = sigma.shape.child_index()
    for k in range(sigma.shape.internal - 1, -1, -1):
        best[k] += best[child[k]].max()
    return int(best[0])


def tree_distance(sigma, nu):
    """ Max over root-to-leaf paths of the fraction of the L+1 path nodes
    where the trees disagree.
    """
    return Fraction(worst_path_disagreement(sigma, nu), sigma.depth + 1)
