""" Tanner codes on double covers

A word assigns one symbol to each of the N = n*d edges of the double cover
H. It is a codeword when the local view at every one of the 2n vertices of
H, read in port order, is a codeword of the inner code.
"""
import logging

import numpy as np
from scipy.sparse import csr_matrix

from tanner_lcc.codes.linear_code import nullspace_from_reduced, row_reduce
from tanner_lcc.common import SizeGuardError, serialize

LOG = logging.getLogger(__name__)

DIMENSION_LIMIT = 4096


class TannerCode(object):
    """ The code C(C0, G) on the double cover of G.

    Port order is the rotation-map port index: inner coordinate j at a
    vertex is the edge on its port j.

    :param inner: InnerCode (LinearCode plus reconstruction)
    :param cover: DoubleCover
    """

    def __init__(self, inner, cover):
        if inner.d != cover.d:
            raise ValueError('inner code length {} does not match graph degree {}'.format(inner.d, cover.d))
        self.inner = inner
        self.cover = cover
        self.field = inner.code.field
        self.p = inner.code.p
        self.n = cover.n
        self.d = cover.d
        self.N = cover.N
        self.k = None
        self.generator = None
        self.warnings = []

        r0 = inner.code.rate
        self.r0 = r0
        if r0 <= 0.5:
            self.warn('inner rate r0 = {:.4f} is not above 1/2'.format(r0))
        lam = cover.base.lam
        delta0 = inner.code.delta0
        self.distance_bound = None
        if delta0 is None:
            self.warn('inner distance unknown; the 2*lambda <= delta0 condition is not checked')
        elif lam is not None:
            if 2 * lam > delta0:
                self.warn('2*lambda = {:.4f} exceeds delta0 = {:.4f}'.format(2 * lam, delta0))
            else:
                self.distance_bound = delta0 ** 2 / 2.0

    def warn(self, message):
        self.warnings.append(message)
        LOG.warning(message)

    @property
    def rate_bound(self):
        """ (2 r0 - 1) N, which equals (2 k0 - d) n exactly.
        """
        return (2 * self.inner.code.k0 - self.d) * self.n

    def _check_word(self, word):
        word = np.asarray(word, dtype=np.int64)
        if word.shape[-1] != self.N:
            raise ValueError('word length {} does not match N = {}'.format(word.shape[-1], self.N))
        return word

    def local_view(self, word, vertex):
        """ Symbols at a vertex of H, in port order.

        :param vertex: 0 .. n-1 for the left copies, n .. 2n-1 for the right copies
        """
        word = self._check_word(word)
        side, v = divmod(int(vertex), self.n)
        return word[self.cover.incident(side, v)]

    def local_views(self, word):
        """ All 2n views, left copies first, shape (2n, d).
        """
        word = self._check_word(word)
        left = word.reshape(self.n, self.d)
        right = word[self.cover.rotation].reshape(self.n, self.d)
        return np.concatenate([left, right])

    def is_codeword(self, word):
        views = self.local_views(word)
        return not np.any(self.inner.code.syndrome(views))

    def global_parity_matrix(self):
        """ Reduced inner checks routed through the port order at every vertex.

        :returns: scipy.sparse.csr_matrix with 2n(d - k0) rows and N columns
        """
        basis = self.inner.code.parity_basis
        checks = basis.shape[0]
        edges = np.concatenate([
            np.arange(self.N).reshape(self.n, self.d),
            self.cover.rotation.reshape(self.n, self.d),
        ])
        rows, cols, vals = [], [], []
        for vertex in range(2 * self.n):
            for c in range(checks):
                nz = np.nonzero(basis[c])[0]
                rows.append(np.full(nz.size, vertex * checks + c))
                cols.append(edges[vertex, nz])
                vals.append(basis[c, nz])
        if not rows:
            return csr_matrix((0, self.N), dtype=np.int64)
        return csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                          shape=(2 * self.n * checks, self.N), dtype=np.int64)

    def compute_dimension_and_generator(self):
        """ Dimension and a nullspace basis of the global parity matrix.

        :raises SizeGuardError: when N exceeds the dense elimination limit
        """
        if self.N > DIMENSION_LIMIT:
            raise SizeGuardError('dense elimination of N = {} exceeds the limit of {}'.format(self.N, DIMENSION_LIMIT))
        parity = self.global_parity_matrix().toarray()
        basis, pivots = row_reduce(parity, self.p)
        generator, _ = nullspace_from_reduced(basis, pivots, self.N, self.p)
        k = generator.shape[0]
        if k < self.rate_bound:
            raise RuntimeError('dimension {} is below the rate bound (2 r0 - 1) N = {}'.format(k, self.rate_bound))
        self.k = k
        self.generator = generator
        LOG.info('Tanner code: N = {}, k = {}, rate {:.4f} (bound {:.4f})'.format(
            self.N, k, k / float(self.N), self.rate_bound / float(self.N)))
        return k, generator

    def zero_codeword(self):
        return np.zeros(self.N, dtype=np.int64)

    def encode(self, message):
        if self.generator is None:
            raise ValueError('generator unavailable; compute the dimension first')
        message = np.asarray(message, dtype=np.int64)
        if message.shape[-1] != self.k:
            raise ValueError('message length {} does not match dimension {}'.format(message.shape[-1], self.k))
        return (message @ self.generator) % self.p

    def random_codeword(self, rng):
        if self.generator is None:
            raise ValueError('generator unavailable; compute the dimension first')
        return self.encode(rng.integers(self.p, size=self.k))

    def word_header(self):
        return {'field': self.field.describe(), 'graph': self.cover.base.fingerprint()}

    def write_word(self, path, word):
        serialize.write_word(path, self._check_word(word), self.word_header())

    def read_word(self, path):
        header, word = serialize.read_word(path)
        if header.get('graph') != self.cover.base.fingerprint():
            raise ValueError('{} was written for another graph'.format(path))
        return self._check_word(word)

    def to_dict(self):
        return {
            'inner': self.inner.to_dict(),
            'graph': self.cover.base.fingerprint(),
            'n': self.n,
            'd': self.d,
            'N': self.N,
            'k': self.k,
            'r0': self.r0,
            'rate': None if self.k is None else self.k / float(self.N),
            'rate_bound': 2 * self.r0 - 1,
            'lambda': self.cover.base.lam,
            'distance_bound': self.distance_bound,
            'warnings': list(self.warnings),
        }


def build(inner, cover):
    return TannerCode(inner, cover)
