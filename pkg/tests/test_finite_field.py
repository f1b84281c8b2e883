import itertools

import numpy as np
import pytest

from tanner_lcc.codes import finite_field
from tanner_lcc.codes.finite_field import FieldSpec, is_irreducible, make_field


def test_prime_field_arithmetic():
    f = make_field(5)
    assert f.modulus == (0, 1)
    assert f.add_idx(3, 4) == 2
    assert f.mul_idx(3, 4) == 2
    assert f.neg_idx(2) == 3
    assert f.inv_idx(2) == 3


def test_gf4_modulus_and_omega_squared():
    f = make_field(2, 2)
    assert f.modulus == (1, 1, 1)
    omega = f.element((0, 1))
    assert omega.value == 2
    assert (omega * omega).value == 3
    assert omega * omega == omega + f.one


@pytest.mark.parametrize('p,ell,modulus', [(2, 3, (1, 1, 0, 1)), (3, 2, (1, 0, 1)), (2, 4, (1, 1, 0, 0, 1))])
def test_least_irreducible_modulus(p, ell, modulus):
    assert make_field(p, ell).modulus == modulus


@pytest.mark.parametrize('p,ell', [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 2)])
def test_field_axioms(p, ell):
    f = make_field(p, ell)
    idx = range(f.order)
    for a in idx:
        assert f.add_idx(a, 0) == a
        assert f.mul_idx(a, 1) == a
        assert f.add_idx(a, f.neg_idx(a)) == 0
        if a:
            assert f.mul_idx(a, f.inv_idx(a)) == 1
    for a, b, c in itertools.product(idx, repeat=3):
        assert f.mul_idx(a, f.add_idx(b, c)) == f.add_idx(f.mul_idx(a, b), f.mul_idx(a, c))


def test_tables_agree_with_polynomial_arithmetic():
    f = make_field(3, 3)
    a, b = np.meshgrid(np.arange(f.order), np.arange(f.order))
    table = f.mul_many(a, b)
    for x, y in [(5, 7), (13, 26), (0, 4), (1, 22)]:
        assert table[y, x] == f._mul_poly(x, y)


def test_vectorized_ops_broadcast():
    f = make_field(2, 2)
    out = f.mul_many(2, np.array([0, 1, 2, 3]))
    assert out.tolist() == [0, 2, 3, 1]
    assert f.add_many(np.array([1, 2]), np.array([[3], [1]])).shape == (2, 2)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(2, 3).inv_idx(0)
    with pytest.raises(ZeroDivisionError):
        finite_field.inv(make_field(7).zero)


def test_mixing_fields_is_an_error():
    a = make_field(2, 2).one
    b = make_field(2, 3).one
    with pytest.raises(ValueError):
        a + b


def test_bad_fields():
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))
    assert not is_irreducible([1, 0, 1], 2)


def test_enumerate_and_describe():
    f = make_field(3, 2)
    elements = f.enumerate()
    assert len(elements) == 9
    assert elements[0] == f.zero
    assert f.describe() == 'GF(3^2)'
    assert f.primitive_element() != 0
