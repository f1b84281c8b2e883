""" Finite fields GF(p^ell)

Elements are addressed by an integer index: the coefficient vector
(c_0, ..., c_{ell-1}) of the residue polynomial read as base-p digits,
index = sum c_i p^i. Index 0 is zero and index 1 is one. The field is
defined by polynomial arithmetic modulo the monic irreducible modulus;
log/antilog tables are an optimization checked against it in the tests.
"""
import itertools
import logging

import numpy as np

LOG = logging.getLogger(__name__)

TABLE_LIMIT = 2 ** 16


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n):
    factors = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        factors.append(n)
    return factors


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """ Remainder of a modulo the monic polynomial m. Coefficients low first.
    """
    a = [x % p for x in a]
    deg_m = len(m) - 1
    for shift in range(len(a) - 1 - deg_m, -1, -1):
        c = a[shift + deg_m]
        if c:
            for j in range(deg_m + 1):
                a[shift + j] = (a[shift + j] - c * m[j]) % p
    return _trim(a[:deg_m] if deg_m > 0 else [0])


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p, degree):
    """ Monic polynomials of the given degree, ordered by the integer value
    of their low coefficients.
    """
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(poly, p):
    """ Trial division by every monic polynomial of degree 1 .. deg/2.
    """
    poly = _trim(poly)
    degree = len(poly) - 1
    if degree < 1:
        return False
    for k in range(1, degree // 2 + 1):
        for divisor in _monic_polys(p, k):
            if _trim(_poly_mod(poly, divisor, p)) == [0]:
                return False
    return True


class FieldSpec(object):
    """ GF(p^ell) with a fixed monic irreducible modulus.

    Immutable after construction. Use ``make_field`` rather than calling
    the constructor with a hand-picked modulus.
    """

    def __init__(self, p, ell, modulus):
        if not is_prime(p):
            raise ValueError('characteristic must be prime, got {}'.format(p))
        if ell < 1:
            raise ValueError('extension degree must be at least 1, got {}'.format(ell))
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != ell + 1 or modulus[-1] != 1:
            raise ValueError('modulus must be monic of degree {}'.format(ell))
        if not is_irreducible(modulus, p):
            raise ValueError('modulus {} is reducible over GF({})'.format(modulus, p))
        self.p = p
        self.ell = ell
        self.modulus = tuple(modulus)
        self.order = p ** ell

        self._powers = p ** np.arange(ell, dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        self._digits = (idx[:, None] // self._powers[None, :]) % p

        self._exp = None
        self._log = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self):
        h = self.order
        g = self.primitive_element()
        exp = np.zeros(h - 1, dtype=np.int64)
        log = np.zeros(h, dtype=np.int64)
        x = 1
        for k in range(h - 1):
            exp[k] = x
            log[x] = k
            x = self._mul_poly(x, g)
        self._exp = exp
        self._log = log

    # Index <-> coefficient vectors

    def coeffs(self, index):
        return tuple(int(c) for c in self._digits[index])

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs) + [0] * (self.ell - len(coeffs))
        return int(sum((int(c) % self.p) * int(w) for c, w in zip(coeffs, self._powers)))

    # Reference polynomial arithmetic

    def _mul_poly(self, a, b):
        prod = _poly_mul(list(self._digits[a]), list(self._digits[b]), self.p)
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), self.p))

    def _pow_poly(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def primitive_element(self):
        """ Smallest index generating the multiplicative group.
        """
        if self.order == 2:
            return 1
        factors = _prime_factors(self.order - 1)
        for g in range(2, self.order):
            if all(self._pow_poly(g, (self.order - 1) // f) != 1 for f in factors):
                return g
        raise RuntimeError('no primitive element found in {}'.format(self.describe()))

    # Scalar arithmetic on indices

    def add_idx(self, a, b):
        return int(self.add_many(a, b))

    def neg_idx(self, a):
        return int(self.neg_many(a))

    def mul_idx(self, a, b):
        if self._exp is None:
            return self._mul_poly(a, b)
        return int(self.mul_many(a, b))

    def inv_idx(self, a):
        if a == 0:
            raise ZeroDivisionError('inversion of zero in {}'.format(self.describe()))
        if self._exp is None:
            return self._pow_poly(a, self.order - 2)
        return int(self._exp[(-self._log[a]) % (self.order - 1)])

    # Vectorized arithmetic on index arrays

    def add_many(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.ell == 1:
            return (a + b) % self.p
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._powers

    def neg_many(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.ell == 1:
            return (-a) % self.p
        return ((-self._digits[a]) % self.p) @ self._powers

    def mul_many(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._exp is None:
            return np.vectorize(self._mul_poly, otypes=[np.int64])(a, b)
        a_b = np.broadcast_arrays(a, b)
        out = self._exp[(self._log[a_b[0]] + self._log[a_b[1]]) % (self.order - 1)]
        return np.where((a_b[0] == 0) | (a_b[1] == 0), 0, out)

    # Element views

    def element(self, value):
        if isinstance(value, (tuple, list)):
            value = self.from_coeffs(value)
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError('{} is not an element index of {}'.format(value, self.describe()))
        return FieldElement(self, value)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def enumerate(self):
        """ All h elements, zero first, in index order.
        """
        return [FieldElement(self, i) for i in range(self.order)]

    def describe(self):
        return 'GF({}^{})'.format(self.p, self.ell)

    def to_dict(self):
        return {'field': self.describe(), 'p': self.p, 'ell': self.ell, 'modulus': list(self.modulus)}

    def _key(self):
        return (self.p, self.ell, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return '<FieldSpec {} modulus={}>'.format(self.describe(), list(self.modulus))


class FieldElement(object):
    """ A value of a FieldSpec. Mixing elements of different fields is an error.
    """
    __slots__ = ('owner', 'value')

    def __init__(self, owner, value):
        self.owner = owner
        self.value = value

    @property
    def coeffs(self):
        return self.owner.coeffs(self.value)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError('expected a FieldElement, got {}'.format(type(other).__name__))
        if other.owner != self.owner:
            raise ValueError('cannot combine elements of {} and {}'.format(
                self.owner.describe(), other.owner.describe()))

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.owner, self.owner.add_idx(self.value, other.value))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg_idx(self.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.owner, self.owner.mul_idx(self.value, other.value))

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        return FieldElement(self.owner, self.owner.inv_idx(self.value))

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and other.owner == self.owner
                and other.value == self.value)

    def __hash__(self):
        return hash((self.owner._key(), self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return '{}{}'.format(self.owner.describe(), list(self.coeffs))


def make_field(p, ell=1):
    """ GF(p^ell) with the lexicographically least monic irreducible modulus.

    Candidates are ordered by the integer value of their non-leading
    coefficients read as base-p digits, constant term first.
    """
    if not is_prime(p):
        raise ValueError('characteristic must be prime, got {}'.format(p))
    if ell < 1:
        raise ValueError('extension degree must be at least 1, got {}'.format(ell))
    for modulus in _monic_polys(p, ell):
        if is_irreducible(modulus, p):
            return FieldSpec(p, ell, modulus)
    raise RuntimeError('no irreducible polynomial of degree {} over GF({})'.format(ell, p))


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def neg(a):
    return -a


def inv(a):
    return a.inverse()
