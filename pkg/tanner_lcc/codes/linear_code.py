""" Linear codes over GF(p)

A code is given by parity checks. Elimination scans columns from the last
one down, so pivots sit as far right as possible and the information set
is the set of free (non-pivot) columns. The systematic generator places
message symbol j at the j-th free column.

GF(2) elimination runs on rows packed into Python ints; other primes use
numpy rows reduced modulo p.
"""
import itertools
import logging

import numpy as np

from tanner_lcc.common import SizeGuardError

LOG = logging.getLogger(__name__)

ENUMERATION_LIMIT = 2 ** 20
_CHUNK = 2 ** 14


def _pack(row):
    return int.from_bytes(np.packbits(np.asarray(row, dtype=np.uint8), bitorder='little').tobytes(), 'little')


def _unpack(value, d):
    nbytes = (d + 7) // 8
    raw = np.frombuffer(value.to_bytes(nbytes, 'little'), dtype=np.uint8)
    return np.unpackbits(raw, bitorder='little')[:d].astype(np.int64)


def _reduce_gf2(matrix):
    """ Reduced echelon form over GF(2). A row's pivot is its highest set bit.
    """
    d = matrix.shape[1]
    basis = {}
    for row in matrix:
        v = _pack(row % 2)
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    # Clear every pivot column from the other rows, highest pivot first
    for c in sorted(basis, reverse=True):
        for other in basis:
            if other != c and (basis[other] >> c) & 1:
                basis[other] ^= basis[c]
    pivots = sorted(basis)
    if not pivots:
        return np.zeros((0, d), dtype=np.int64), []
    return np.array([_unpack(basis[c], d) for c in pivots], dtype=np.int64), pivots


def _reduce_modp(matrix, p):
    """ Reduced echelon form over GF(p), pivots normalized to one.
    """
    m = np.array(matrix, dtype=np.int64) % p
    rows, d = m.shape
    found = []
    r = 0
    for col in range(d - 1, -1, -1):
        if r == rows:
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, col]), p - 2, p)) % p
        factors = m[:, col].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(factors[hit], m[r])) % p
        found.append(col)
        r += 1
    order = np.argsort(found)
    return m[:r][order], [found[i] for i in order]


def row_reduce(matrix, p):
    """ Row-reduce matrix over GF(p).

    :param matrix: 2-d array-like of integers, d columns
    :param p: prime characteristic
    :returns: (basis, pivots); basis is rank x d in reduced echelon form,
        pivots[i] is the pivot column of basis[i], ascending
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.int64))
    if matrix.size == 0:
        return np.zeros((0, matrix.shape[1]), dtype=np.int64), []
    if p == 2:
        return _reduce_gf2(matrix)
    return _reduce_modp(matrix, p)


def rank(matrix, p):
    return len(row_reduce(matrix, p)[1])


def nullspace_from_reduced(basis, pivots, d, p):
    """ Nullspace rows, one per free column in ascending order.
    """
    free = [c for c in range(d) if c not in set(pivots)]
    null = np.zeros((len(free), d), dtype=np.int64)
    null[np.arange(len(free)), free] = 1
    if pivots and free:
        null[:, pivots] = (-basis[:, free].T) % p
    return null, free


def nullspace(matrix, p, d=None):
    matrix = np.asarray(matrix, dtype=np.int64)
    if d is None:
        d = matrix.shape[1]
    basis, pivots = row_reduce(matrix.reshape(-1, d), p)
    return nullspace_from_reduced(basis, pivots, d, p)[0]


class LinearCode(object):
    """ Linear code of length d over a prime field, defined by parity checks.

    :param field: FieldSpec of the symbol alphabet (must be a prime field)
    :param length: code length d
    :param parity: parity check rows, each of length d
    """

    def __init__(self, field, length, parity):
        if field.ell != 1:
            raise ValueError('code symbols must come from a prime field, got {}'.format(field.describe()))
        self.field = field
        self.p = field.p
        self.length = int(length)
        parity = np.asarray(parity, dtype=np.int64)
        if parity.size == 0:
            parity = np.zeros((0, self.length), dtype=np.int64)
        if parity.ndim != 2 or parity.shape[1] != self.length:
            raise ValueError('parity rows must have length {}, got shape {}'.format(self.length, parity.shape))
        if parity.size and (parity.min() < 0 or parity.max() >= self.p):
            raise ValueError('parity entries must lie in [0, {})'.format(self.p))
        self.parity = parity
        self.warnings = []

        self.parity_basis, self.check_set = row_reduce(parity, self.p)
        self.rank = len(self.check_set)
        self.generator, self.info_set = nullspace_from_reduced(
            self.parity_basis, self.check_set, self.length, self.p)
        self.k0 = self.length - self.rank
        self.rate = self.k0 / float(self.length)
        self.degenerate = self.k0 == 0
        if self.degenerate:
            self.warn('parity checks have full rank {}; the code is {{0}}'.format(self.rank))

        if self.generator.size and np.any((self.parity @ self.generator.T) % self.p):
            raise RuntimeError('generator does not annihilate the parity checks')

        self.distance = None
        self.delta0 = None
        if not self.degenerate and self.p ** self.k0 <= ENUMERATION_LIMIT:
            self.min_distance_bruteforce()

    @classmethod
    def from_parity_checks(cls, field, d, parity_rows):
        return cls(field, d, parity_rows)

    @classmethod
    def from_dict(cls, field, data):
        return cls(field, data['d'], data['parity'])

    def warn(self, message):
        self.warnings.append(message)
        LOG.warning(message)

    def encode(self, message):
        message = np.asarray(message, dtype=np.int64)
        if message.shape[-1] != self.k0:
            raise ValueError('message length {} does not match dimension {}'.format(message.shape[-1], self.k0))
        return (message @ self.generator) % self.p

    def syndrome(self, words):
        return (np.asarray(words, dtype=np.int64) @ self.parity_basis.T) % self.p

    def is_codeword(self, word):
        word = np.asarray(word, dtype=np.int64)
        if word.shape[-1] != self.length:
            raise ValueError('word length {} does not match code length {}'.format(word.shape[-1], self.length))
        return not np.any(self.syndrome(word))

    def codewords(self):
        """ Every codeword, in chunks. Guarded by p^k0 <= 2^20.
        """
        total = self.p ** self.k0
        if total > ENUMERATION_LIMIT:
            raise SizeGuardError('enumerating {}^{} codewords exceeds the limit of {}'.format(
                self.p, self.k0, ENUMERATION_LIMIT))
        weights = self.p ** np.arange(self.k0, dtype=np.int64)
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            messages = (idx[:, None] // weights[None, :]) % self.p
            yield self.encode(messages)

    def min_distance_bruteforce(self):
        """ Exact minimum weight over nonzero codewords. Also sets delta0.
        """
        if self.degenerate:
            raise ValueError('the zero code has no nonzero codewords')
        best = self.length
        for chunk in self.codewords():
            w = np.count_nonzero(chunk, axis=1)
            w = w[w > 0]
            if w.size:
                best = min(best, int(w.min()))
        self.distance = best
        self.delta0 = best / float(self.length)
        return best

    def to_dict(self):
        out = dict(self.field.to_dict())
        out.update({
            'd': self.length,
            'parity': self.parity.tolist(),
            'k0': self.k0,
            'distance': self.distance,
        })
        return out

    def __repr__(self):
        return '<LinearCode [{}, {}] over {}>'.format(self.length, self.k0, self.field.describe())


def from_parity_checks(field, d, parity_rows):
    return LinearCode(field, d, parity_rows)


def repetition_checks(d, p=2):
    """ Pairwise equality checks c_i - c_j = 0 defining the repetition code.
    """
    rows = []
    for i, j in itertools.combinations(range(d), 2):
        row = [0] * d
        row[i] = 1
        row[j] = p - 1
        rows.append(row)
    return rows
