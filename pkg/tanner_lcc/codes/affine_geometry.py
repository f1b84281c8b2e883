""" Affine geometry inner codes

Points of F_h^m are indexed by their coordinate vector read as base-h
digits (coordinate 0 least significant), coordinates being field element
indices. An r-flat is a coset x + V of an r-dimensional subspace V. The
inner code over GF(p) has one parity check per flat: the sum of the
codeword over the flat's points is zero.
"""
import itertools
import logging

import numpy as np

from tanner_lcc.codes.finite_field import make_field
from tanner_lcc.codes.linear_code import LinearCode
from tanner_lcc.codes.smooth_recon import InnerCode, ParityReconstruction
from tanner_lcc.common import SizeGuardError

LOG = logging.getLogger(__name__)

POINT_LIMIT = 2 ** 16


def _prime_power(h):
    for p in range(2, h + 1):
        if h % p == 0:
            ell, rest = 0, h
            while rest % p == 0:
                rest //= p
                ell += 1
            if rest == 1:
                return p, ell
            return None
    return None


class AffineGeometry(object):
    """ Points and r-flats of the affine space F_h^m.

    :param point_field: FieldSpec of GF(h)
    :param m: ambient dimension
    :param r: flat dimension, 1 <= r < m
    """

    def __init__(self, point_field, m, r=1):
        h = point_field.order
        if not 1 <= r < m:
            raise ValueError('flat dimension r = {} must satisfy 1 <= r < m = {}'.format(r, m))
        if h ** m > POINT_LIMIT:
            raise SizeGuardError('h^m = {} points exceeds the limit of {}'.format(h ** m, POINT_LIMIT))
        self.field = point_field
        self.h = h
        self.m = m
        self.r = r
        self.size = h ** m

        self._weights = h ** np.arange(m, dtype=np.int64)
        idx = np.arange(self.size, dtype=np.int64)
        self.points = (idx[:, None] // self._weights[None, :]) % h

        self.flats = self._enumerate()
        self.incidence = np.zeros((len(self.flats), self.size), dtype=np.int64)
        self.incidence[np.repeat(np.arange(len(self.flats)), self.flats.shape[1]), self.flats.ravel()] = 1
        LOG.debug('AG(m={}, h={}) has {} flats of dimension {}'.format(m, h, len(self.flats), r))

    def point_index(self, coords):
        return np.asarray(coords, dtype=np.int64) @ self._weights

    def directions(self):
        """ Nonzero vectors whose first nonzero coordinate is one.
        """
        nonzero = self.points[1:]
        first = nonzero[np.arange(len(nonzero)), np.argmax(nonzero != 0, axis=1)]
        return nonzero[first == 1]

    def span(self, vectors):
        """ Point indices of the linear span of the given coordinate vectors.
        """
        span = np.zeros((1, self.m), dtype=np.int64)
        scalars = np.arange(self.h, dtype=np.int64)
        for v in vectors:
            scaled = self.field.mul_many(scalars[:, None], np.asarray(v)[None, :])
            span = self.field.add_many(span[:, None, :], scaled[None, :, :]).reshape(-1, self.m)
        return np.unique(self.point_index(span))

    def _enumerate(self):
        seen = set()
        flats = []
        for combo in itertools.combinations(self.directions(), self.r):
            subspace = self.span(combo)
            if subspace.size != self.h ** self.r:
                continue
            key = tuple(subspace.tolist())
            if key in seen:
                continue
            seen.add(key)
            offsets = self.points[subspace]
            covered = np.zeros(self.size, dtype=bool)
            for x in range(self.size):
                if covered[x]:
                    continue
                flat = np.sort(self.point_index(self.field.add_many(self.points[x][None, :], offsets)))
                covered[flat] = True
                flats.append(tuple(flat.tolist()))
        flats.sort()
        return np.array(flats, dtype=np.int64)

    def flats_through(self, x):
        return np.nonzero(self.incidence[:, x])[0]

    def to_dict(self):
        return {
            'h': self.h,
            'm': self.m,
            'r': self.r,
            'points': self.size,
            'flats': len(self.flats),
            'field': self.field.to_dict(),
        }


def enumerate_flats(h, m, r=1):
    """ All r-flats of F_h^m.

    :param h: prime power field order
    :returns: AffineGeometry
    """
    pp = _prime_power(h)
    if pp is None:
        raise ValueError('h = {} is not a prime power'.format(h))
    return AffineGeometry(make_field(*pp), m, r)


def build_inner_code(geometry, p):
    """ The code over GF(p) whose parity checks are the flat incidence rows,
    with reconstruction from the other points of a uniformly random flat.

    :returns: InnerCode with q0 = h^r - 1 and s0 = d - 1
    """
    if geometry.field.p != p:
        raise ValueError('symbol field GF({}) is incompatible with h = {}'.format(p, geometry.h))
    code = LinearCode(make_field(p, 1), geometry.size, geometry.incidence)
    recon = ParityReconstruction(code, geometry.incidence)
    name = 'AG(r={}, m={}, h={})'.format(geometry.r, geometry.m, geometry.h)
    LOG.info('{} over GF({}): d = {}, k0 = {}, q0 = {}'.format(name, p, code.length, code.k0, recon.q0))
    return InnerCode(code, recon, name, geometry)


def dimension_bound(h, m, beta):
    return h ** m - h ** (m * (1.0 - beta))


def dimension_bound_check(geometry, k0, beta=0.05, epsilon_prime=None):
    """ Advisory comparison of the computed dimension with h^m - h^(m(1 - beta)).

    :param epsilon_prime: when given, the extension degree should equal epsilon_prime * m
    :returns: True when k0 meets the bound
    """
    if epsilon_prime is not None and abs(geometry.field.ell - epsilon_prime * geometry.m) > 1e-9:
        LOG.warning('extension degree {} differs from epsilon_prime * m = {}'.format(
            geometry.field.ell, epsilon_prime * geometry.m))
    bound = dimension_bound(geometry.h, geometry.m, beta)
    ok = k0 >= bound
    if not ok:
        LOG.warning('dimension {} is below the bound {:.4f} (beta = {})'.format(k0, bound, beta))
    return ok
