""" Score of a root symbol on an evaluated tree

For a tree tau and a symbol a, the score counts the fewest worst-path
disagreements between tau and any locally consistent tree whose root is
a. Counts are kept unnormalized; dividing by L + 1 gives the distance.

The bottom-up recursion is

    best_a(leaf) = 0
    best_a(x)    = min over child labels (b_1..b_q) with A0(b) = a
                   of max_r (best_{b_r}(y_r) + [tau(y_r) != b_r])
    count(a)     = best_a(root) + [tau(root) != a]
"""
import itertools
import logging
from fractions import Fraction

import numpy as np

from tanner_lcc.common import SizeGuardError
from tanner_lcc.local_corrector.trees import worst_path_disagreement

LOG = logging.getLogger(__name__)

INF = np.iinfo(np.int64).max // 4
ENUMERATION_LIMIT = 2 ** 20
ENUMERATE_MAX_COMBOS = 256
_CHUNK = 2 ** 12


class SubtreeResult(object):
    """ Outcome of correcting one evaluated tree.

    :param symbol: returned root symbol
    :param counts: unnormalized score per symbol, None where no consistent tree exists
    :param denominator: L + 1
    :param ambiguous: True when several symbols share the minimum
    """

    def __init__(self, symbol, counts, denominator, ambiguous):
        self.symbol = symbol
        self.counts = counts
        self.denominator = denominator
        self.ambiguous = ambiguous

    @property
    def scores(self):
        return [None if c is None else Fraction(c, self.denominator) for c in self.counts]

    def to_dict(self):
        return {'symbol': self.symbol, 'counts': self.counts, 'ambiguous': self.ambiguous}


def _child_costs(tau):
    """ Mismatch indicators [tau(child r of k) != b], shape (internal, q, p).
    """
    child = tau.shape.child_index()
    labels = tau.labels[child]
    symbols = np.arange(tau.p)
    return (labels[..., None] != symbols).astype(np.int64)


def _combine_enumerate(costs, coeffs, p):
    """ best over all p^q child labelings, grouped by reconstructed symbol.

    :param costs: (nodes, q, p)
    :param coeffs: (nodes, q)
    """
    nodes, q, _ = costs.shape
    combos = np.array(list(itertools.product(range(p), repeat=q)), dtype=np.int64)
    out = np.full((nodes, p), INF, dtype=np.int64)
    r_idx = np.arange(q)
    for start in range(0, len(combos), _CHUNK):
        block = combos[start:start + _CHUNK]
        worst = costs[:, r_idx[None, :], block].max(axis=2)
        sums = (block @ coeffs.T).T % p
        for a in range(p):
            masked = np.where(sums == a, worst, INF)
            out[:, a] = np.minimum(out[:, a], masked.min(axis=1))
    return out


def _combine_linear(costs, coeffs, p):
    """ Min-max convolution over Z_p, one child at a time.
    """
    nodes, q, _ = costs.shape
    rows = np.arange(nodes)[:, None]
    s = np.arange(p)[None, :]
    g = np.full((nodes, p), INF, dtype=np.int64)
    g[:, 0] = 0
    for r in range(q):
        nxt = np.full((nodes, p), INF, dtype=np.int64)
        for b in range(p):
            shift = (coeffs[:, r] * b) % p
            prev = g[rows, (s - shift[:, None]) % p]
            cand = np.maximum(prev, costs[:, r, b][:, None])
            nxt = np.minimum(nxt, cand)
        g = nxt
    return g


def best_table(tau, method='auto'):
    """ best_a(x) for every node x and symbol a, shape (nodes, p).
    """
    p = tau.p
    shape = tau.shape
    q = shape.q
    if method == 'auto':
        method = 'enumerate' if p ** q <= ENUMERATE_MAX_COMBOS else 'linear'
    combine = {'enumerate': _combine_enumerate, 'linear': _combine_linear}[method]

    best = np.zeros((shape.size, p), dtype=np.int64)
    mismatch = _child_costs(tau)
    child = shape.child_index()
    start = shape.internal
    for t in range(shape.depth - 1, -1, -1):
        size = q ** t
        ks = np.arange(start - size, start)
        child_best = best[child[ks]]
        costs = np.where(child_best >= INF, INF, child_best + mismatch[ks])
        best[ks] = combine(costs, shape.coeffs[ks], p)
        start -= size
    return best


def _counts_from_root(root_best, root_label):
    counts = []
    for a, b in enumerate(root_best):
        counts.append(None if b >= INF else int(b) + int(root_label != a))
    return counts


def pick_symbol(counts, observed):
    """ Argmin of the counts, scanning symbols from the observed root symbol
    upwards modulo p. Returns (symbol, ambiguous).
    """
    p = len(counts)
    order = [(observed + j) % p for j in range(p)]
    finite = [a for a in order if counts[a] is not None]
    low = min(counts[a] for a in finite)
    winners = [a for a in finite if counts[a] == low]
    return winners[0], len(winners) > 1


def correct_subtree(tau, method='auto'):
    """ Return the symbol with the lowest score on tau.

    :param tau: EvaluatedTree
    :param method: 'enumerate' (all child labelings), 'linear' (min-max
        convolution over field sums) or 'auto'
    :returns: SubtreeResult
    """
    best = best_table(tau, method)
    counts = _counts_from_root(best[0], tau.root)
    symbol, ambiguous = pick_symbol(counts, tau.root)
    return SubtreeResult(symbol, counts, tau.depth + 1, ambiguous)


def _consistent_labelings(tau):
    """ Every locally consistent labeling of tau's shape, in chunks.
    A consistent tree is fixed by its leaves.
    """
    shape = tau.shape
    p = tau.p
    leaves = shape.size - shape.internal
    total = p ** leaves
    if total > ENUMERATION_LIMIT:
        raise SizeGuardError('{}^{} leaf labelings exceed the limit of {}'.format(p, leaves, ENUMERATION_LIMIT))
    weights = p ** np.arange(leaves, dtype=np.int64)
    child = shape.child_index()
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        labels = np.zeros((idx.size, shape.size), dtype=np.int64)
        labels[:, shape.internal:] = (idx[:, None] // weights[None, :]) % p
        for k in range(shape.internal - 1, -1, -1):
            labels[:, k] = (labels[:, child[k]] * shape.coeffs[k]).sum(axis=1) % p
        yield labels


def score_bruteforce(tau):
    """ Score counts by enumerating all locally consistent trees.

    :returns: list of counts per symbol, None where no consistent tree has that root
    """
    shape = tau.shape
    child = shape.child_index()
    counts = [None] * tau.p
    for labels in _consistent_labelings(tau):
        mism = (labels != tau.labels[None, :]).astype(np.int64)
        worst = mism.copy()
        for k in range(shape.internal - 1, -1, -1):
            worst[:, k] += worst[:, child[k]].max(axis=1)
        for a in range(tau.p):
            hit = labels[:, 0] == a
            if np.any(hit):
                low = int(worst[hit, 0].min())
                counts[a] = low if counts[a] is None else min(counts[a], low)
    return counts


def separation_holds(tau, truth, method='auto'):
    """ Every consistent tree rooted away from truth's root disagrees with tau
    on some path in at least (L + 1) - worst(tau, truth) nodes.
    """
    counts = correct_subtree(tau, method).counts
    need = tau.depth + 1 - worst_path_disagreement(tau, truth)
    others = [c for a, c in enumerate(counts) if a != truth.root and c is not None]
    return all(c >= need for c in others)
