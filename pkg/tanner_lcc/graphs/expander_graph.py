""" Regular graphs, their double covers and random walks

A d-regular graph is stored as a rotation table: half-edge k = u*d + port
is paired with rot[k] = v*d + j, meaning port `port` of u leads to v and
arrives on port j of v. Ports follow ascending neighbour order.

In the double cover H, edge id e = u*d + port joins the left copy of u to
the right copy of v = rot[e] // d. Left vertex u sees edges u*d .. u*d+d-1
in port order; right vertex v sees rot[v*d + j] at port j.
"""
import logging
import math
from collections import defaultdict

import numpy as np
from scipy.sparse import csgraph, csr_matrix

from tanner_lcc.common import SizeGuardError, serialize

LOG = logging.getLogger(__name__)

RETRY_BUDGET = 100
DENSE_LIMIT = 2048
EDGE_WALK_LIMIT = 64
ZERO_CLUSTER = 1e-6


def ramanujan_bound(d):
    """ 2 sqrt(d - 1) / d, the normalized Ramanujan threshold.
    """
    return 2.0 * math.sqrt(d - 1) / d


class RegularGraph(object):
    """ Simple d-regular graph on n vertices given by its rotation table.

    :param n: vertex count
    :param d: degree
    :param rotation: flat integer array of length n*d, a fixed-point-free
        involution on half-edges
    """

    def __init__(self, n, d, rotation, lam=None, lam_tolerance=None):
        self.n = int(n)
        self.d = int(d)
        rotation = np.asarray(rotation, dtype=np.int64)
        if rotation.shape != (self.n * self.d,):
            raise ValueError('rotation must have n*d = {} entries'.format(self.n * self.d))
        half = np.arange(self.n * self.d)
        if rotation.min() < 0 or rotation.max() >= self.n * self.d:
            raise ValueError('rotation entries out of range')
        if np.any(rotation[rotation] != half):
            raise ValueError('rotation is not an involution')
        if np.any(rotation // self.d == half // self.d):
            raise ValueError('self-loops are not allowed')
        self.rotation = rotation
        self.neighbours = (rotation // self.d).reshape(self.n, self.d)
        if np.any(np.diff(np.sort(self.neighbours, axis=1), axis=1) == 0):
            raise ValueError('multi-edges are not allowed')
        self.lam = lam
        self.lam_tolerance = lam_tolerance

    @classmethod
    def from_edges(cls, n, edges):
        """ Build from an undirected simple edge list; ports follow sorted neighbour order.
        """
        nbrs = defaultdict(list)
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError('self-loop at vertex {}'.format(u))
            nbrs[u].append(v)
            nbrs[v].append(u)
        degrees = set(len(nbrs[u]) for u in range(n))
        if len(degrees) != 1:
            raise ValueError('graph is not regular, degrees {}'.format(sorted(degrees)))
        d = degrees.pop()
        table = [sorted(nbrs[u]) for u in range(n)]
        port_of = [dict((v, j) for j, v in enumerate(row)) for row in table]
        rotation = np.empty(n * d, dtype=np.int64)
        for u in range(n):
            if len(port_of[u]) != d:
                raise ValueError('multi-edge at vertex {}'.format(u))
            for port, v in enumerate(table[u]):
                rotation[u * d + port] = v * d + port_of[v][u]
        return cls(n, d, rotation)

    @classmethod
    def from_dict(cls, data):
        return cls(data['n'], data['d'], data['rotation'], data.get('lambda'), data.get('lambda_tolerance'))

    def edges(self):
        """ Undirected edges (u, v) with u < v, sorted.
        """
        u = np.repeat(np.arange(self.n), self.d)
        v = self.neighbours.ravel()
        keep = u < v
        return sorted(zip(u[keep].tolist(), v[keep].tolist()))

    def adjacency(self):
        a = np.zeros((self.n, self.n))
        a[np.repeat(np.arange(self.n), self.d), self.neighbours.ravel()] = 1.0
        return a

    def apply_walk(self, x):
        """ One step of the normalized walk operator A/d applied to x.
        """
        return x[self.neighbours].sum(axis=1) / self.d

    def is_connected(self):
        a = csr_matrix((np.ones(self.n * self.d), (np.repeat(np.arange(self.n), self.d), self.neighbours.ravel())),
                       shape=(self.n, self.n))
        return csgraph.connected_components(a, directed=False)[0] == 1

    def second_eigenvalue(self, tolerance=1e-8):
        self.lam = second_eigenvalue(self, tolerance)
        self.lam_tolerance = tolerance
        return self.lam

    def fingerprint(self):
        """ Content hash of the structure, independent of the cached lambda.
        """
        return serialize.content_hash({'n': self.n, 'd': self.d, 'rotation': self.rotation})

    def to_dict(self):
        return {
            'n': self.n,
            'd': self.d,
            'adjacency': self.neighbours.tolist(),
            'rotation': self.rotation.tolist(),
            'lambda': self.lam,
            'lambda_tolerance': self.lam_tolerance,
        }

    def __repr__(self):
        return '<RegularGraph n={} d={} lambda={}>'.format(self.n, self.d, self.lam)


def complete_graph(n):
    return RegularGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n):
    return RegularGraph.from_edges(n, [(u, (u + 1) % n) for u in range(n)])


def _try_pairing(n, d, rng):
    """ One attempt of the stub pairing model with repair of bad pairs.
    Returns an edge set or None.
    """
    edges = set()
    stubs = np.repeat(np.arange(n), d)
    while stubs.size:
        potential = defaultdict(int)
        rng.shuffle(stubs)
        for s1, s2 in stubs.reshape(-1, 2).tolist():
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] += 1
                potential[s2] += 1
        if potential and not _suitable(edges, potential):
            return None
        stubs = np.array([u for u, count in sorted(potential.items()) for _ in range(count)], dtype=np.int64)
    return edges


def _suitable(edges, potential):
    nodes = sorted(potential)
    for a, s1 in enumerate(nodes):
        for s2 in nodes[a + 1:]:
            if (s1, s2) not in edges:
                return True
    return False


def random_regular(n, d, seed):
    """ Random simple d-regular graph from the pairing model.

    :param seed: integer seed or numpy Generator
    :raises ValueError: when n*d is odd or d >= n
    :raises RuntimeError: when the retry budget runs out
    """
    if (n * d) % 2:
        raise ValueError('n * d must be even, got n = {}, d = {}'.format(n, d))
    if not 0 < d < n:
        raise ValueError('need 0 < d < n, got n = {}, d = {}'.format(n, d))
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for attempt in range(RETRY_BUDGET):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            if attempt:
                LOG.debug('pairing succeeded after {} retries'.format(attempt))
            return RegularGraph.from_edges(n, sorted(edges))
    raise RuntimeError('no simple {}-regular graph on {} vertices after {} attempts; '
                       'try another seed'.format(d, n, RETRY_BUDGET))


def second_eigenvalue(graph, tolerance=1e-8, max_iter=200000):
    """ Largest |eigenvalue| of A/d apart from the trivial one.

    Power iteration on (A/d)^2 with the all-ones vector projected out,
    stopped when the eigen-residual drops below tolerance. Disconnected
    graphs report 1.

    :raises RuntimeError: when the iteration cap is reached
    """
    if not graph.is_connected():
        LOG.warning('graph is disconnected; lambda = 1')
        return 1.0
    x = np.cos(np.arange(graph.n) * 1.618033988749895 + 0.5)
    x -= x.mean()
    x /= np.linalg.norm(x)
    for it in range(max_iter):
        y = graph.apply_walk(graph.apply_walk(x))
        y -= y.mean()
        r = float(x @ y)
        residual = np.linalg.norm(y - r * x)
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return 0.0
        x = y / norm
        if residual < tolerance:
            LOG.debug('power iteration converged after {} steps'.format(it + 1))
            return math.sqrt(max(r, 0.0))
    raise RuntimeError('power iteration did not reach tolerance {} in {} steps'.format(tolerance, max_iter))


def spectrum_dense(graph):
    """ Eigenvalues of A/d in descending order, by a dense symmetric solver.
    """
    if graph.n > DENSE_LIMIT:
        raise SizeGuardError('dense eigensolve of n = {} exceeds the limit of {}'.format(graph.n, DENSE_LIMIT))
    return np.sort(np.linalg.eigvalsh(graph.adjacency() / graph.d))[::-1]


class DoubleCover(object):
    """ Bipartite double cover H of a regular graph, with N = n*d edge ids.
    """

    def __init__(self, base):
        self.base = base
        self.n = base.n
        self.d = base.d
        self.N = base.n * base.d
        self.rotation = base.rotation

    def edge_id(self, u, port):
        return u * self.d + port

    def left(self, e):
        """ (left vertex, port) of edge e.
        """
        return e // self.d, e % self.d

    def right(self, e):
        """ (right vertex, port) of edge e.
        """
        k = self.rotation[e]
        return k // self.d, k % self.d

    def right_edge(self, v, port):
        return self.rotation[v * self.d + port]

    def incident(self, side, vertex):
        """ Edge ids at a vertex of H in port order. side 0 is left, 1 is right.
        """
        block = np.arange(vertex * self.d, (vertex + 1) * self.d)
        return block if side == 0 else self.rotation[block]

    def endpoint(self, e, side):
        """ (vertex, port) of edge e on the given side, vectorized over e.
        """
        e = np.asarray(e, dtype=np.int64)
        k = np.where(np.asarray(side) == 0, e, self.rotation[e])
        return k // self.d, k % self.d

    def edge_at(self, vertex, port, side):
        """ Edge id at (vertex, port) on the given side, vectorized.
        """
        k = np.asarray(vertex, dtype=np.int64) * self.d + np.asarray(port, dtype=np.int64)
        return np.where(np.asarray(side) == 0, k, self.rotation[k])

    def to_dict(self):
        return {'n': self.n, 'd': self.d, 'N': self.N}


def double_cover(graph):
    return DoubleCover(graph)


def _start_vertices(n, start, trials, rng):
    if start is None or (isinstance(start, str) and start == 'uniform'):
        return rng.integers(n, size=trials)
    if np.ndim(start) == 0:
        return np.full(trials, int(start), dtype=np.int64)
    probs = np.asarray(start, dtype=float)
    return rng.choice(n, size=trials, p=probs / probs.sum())


def random_walk(cover, start, length, rng, trials=None):
    """ Walks on H starting on the left side.

    :param start: a left vertex, 'uniform', or a probability vector over V0
    :param trials: number of independent walks; None for a single walk
    :returns: (vertices, edges) with shapes (trials, length+1) and (trials, length);
        vertices alternate sides starting with the left copy
    """
    if length < 1:
        raise ValueError('walk length must be at least 1')
    count = 1 if trials is None else int(trials)
    d = cover.d
    vertices = np.empty((count, length + 1), dtype=np.int64)
    edges = np.empty((count, length), dtype=np.int64)
    vertices[:, 0] = _start_vertices(cover.n, start, count, rng)
    for t in range(length):
        ports = rng.integers(d, size=count)
        k = vertices[:, t] * d + ports
        if t % 2 == 0:
            edges[:, t] = k
            vertices[:, t + 1] = cover.rotation[k] // d
        else:
            e = cover.rotation[k]
            edges[:, t] = e
            vertices[:, t + 1] = e // d
    if trials is None:
        return vertices[0], edges[0]
    return vertices, edges


def walk_distribution(graph, start, length):
    """ Exact vertex distribution after `length` steps from a left vertex.
    """
    mu = np.zeros(graph.n)
    mu[start] = 1.0
    for _ in range(length):
        mu = graph.apply_walk(mu)
    return mu


def leaf_distribution_check(graph, start, length):
    """ Compare ||mu - 1/n||_2 with lambda^length after an exact walk.

    :returns: (distance, bound, holds)
    """
    if graph.lam is None:
        graph.second_eigenvalue()
    mu = walk_distribution(graph, start, length)
    distance = float(np.linalg.norm(mu - 1.0 / graph.n))
    bound = graph.lam ** length
    return distance, bound, distance <= bound + 1e-12


class SpectrumCheck(object):

    def __init__(self, ok, operator_matches, computed, expected, rank_r):
        self.ok = ok
        self.operator_matches = operator_matches
        self.computed = computed
        self.expected = expected
        self.rank_r = rank_r

    def to_dict(self):
        return {
            'ok': self.ok,
            'operator_matches': self.operator_matches,
            'computed_nonzero': self.computed,
            'expected_nonzero': self.expected,
            'rank_R': self.rank_r,
        }


def edge_walk_operator(graph):
    """ Transition matrix on directed half-edge states (u, i, b), index (u*d + i)*2 + b.

    State (u, i, b) moves to (v, j, 1 - b) with probability 1/d whenever v
    is the i-th neighbour of u.
    """
    n, d = graph.n, graph.d
    size = 2 * n * d
    op = np.zeros((size, size))
    for u in range(n):
        for i in range(d):
            v = int(graph.neighbours[u, i])
            for b in (0, 1):
                for j in range(d):
                    op[(u * d + i) * 2 + b, (v * d + j) * 2 + (1 - b)] = 1.0 / d
    return op


def edge_walk_spectrum_check(graph, tolerance=1e-8):
    """ Check that the half-edge walk operator equals R (x) S and that its
    nonzero spectrum is {+mu, -mu} over the eigenvalues mu of A/d.

    :returns: SpectrumCheck
    """
    if graph.n > EDGE_WALK_LIMIT:
        raise SizeGuardError('edge walk check needs n <= {}, got {}'.format(EDGE_WALK_LIMIT, graph.n))
    n, d = graph.n, graph.d
    op = edge_walk_operator(graph)

    r = np.zeros((n * d, n * d))
    for u in range(n):
        for i in range(d):
            v = int(graph.neighbours[u, i])
            r[u * d + i, v * d:(v + 1) * d] = 1.0 / d
    s = np.array([[0.0, 1.0], [1.0, 0.0]])
    operator_matches = bool(np.array_equal(op, np.kron(r, s)))
    rank_r = int(np.linalg.matrix_rank(r))

    eig = np.linalg.eigvals(op)
    computed = eig[np.abs(eig) > ZERO_CLUSTER]
    mu = np.linalg.eigvalsh(graph.adjacency() / d)
    expected = np.concatenate([mu, -mu])
    expected = np.sort(expected[np.abs(expected) > ZERO_CLUSTER])

    ok = operator_matches and rank_r <= n and computed.size == expected.size
    if ok:
        ok = bool(np.all(np.abs(computed.imag) <= tolerance))
        computed_real = np.sort(computed.real)
        ok = ok and bool(np.allclose(computed_real, expected, rtol=0.0, atol=tolerance))
    else:
        computed_real = np.sort(computed.real)
    return SpectrumCheck(ok, operator_matches, computed_real.tolist(), expected.tolist(), rank_r)
