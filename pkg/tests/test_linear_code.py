import numpy as np
import pytest

from tanner_lcc.codes.finite_field import make_field
from tanner_lcc.codes.linear_code import (LinearCode, nullspace, rank, repetition_checks, row_reduce)
from tanner_lcc.common import SizeGuardError

GF2 = make_field(2)
GF3 = make_field(3)


def test_single_parity_code():
    code = LinearCode(GF2, 4, [[1, 1, 1, 1]])
    assert code.k0 == 3
    assert code.check_set == [3]
    assert code.info_set == [0, 1, 2]
    assert code.encode([1, 0, 1]).tolist() == [1, 0, 1, 0]
    assert code.distance == 2
    assert code.delta0 == 0.5


def test_syndrome_and_membership():
    code = LinearCode(GF2, 4, [[1, 1, 1, 1]])
    assert code.is_codeword([1, 1, 0, 0])
    assert not code.is_codeword([1, 0, 0, 0])
    with pytest.raises(ValueError):
        code.is_codeword([1, 1, 0])


def test_every_codeword_satisfies_the_checks():
    parity = [[1, 2, 0, 1, 0], [0, 1, 1, 0, 2]]
    code = LinearCode(GF3, 5, parity)
    words = np.concatenate(list(code.codewords()))
    assert words.shape == (27, 5)
    assert not np.any((words @ np.array(parity).T) % 3)
    assert len(set(map(tuple, words.tolist()))) == 27


def test_generator_is_systematic_on_the_info_set():
    code = LinearCode(GF3, 5, [[1, 2, 0, 1, 0], [0, 1, 1, 0, 2]])
    assert code.generator[:, code.info_set].tolist() == np.eye(code.k0, dtype=int).tolist()


def test_repetition_code():
    code = LinearCode(GF3, 4, repetition_checks(4, 3))
    assert code.k0 == 1
    assert code.distance == 4
    assert code.encode([2]).tolist() == [2, 2, 2, 2]


def test_rank_deficient_checks_are_reduced():
    rows = [[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]]
    assert rank(rows, 2) == 2
    basis, pivots = row_reduce(rows, 2)
    assert basis.shape == (2, 4)
    assert pivots == sorted(pivots)
    null = nullspace(rows, 2)
    assert null.shape == (2, 4)
    assert not np.any((np.array(rows) @ null.T) % 2)


def test_full_rank_checks_give_the_zero_code():
    code = LinearCode(GF2, 3, np.eye(3, dtype=int))
    assert code.degenerate
    assert code.k0 == 0
    assert code.warnings


def test_empty_checks_give_the_full_space():
    code = LinearCode(GF2, 3, [])
    assert code.k0 == 3
    assert code.distance == 1


def test_bad_inputs():
    with pytest.raises(ValueError):
        LinearCode(make_field(2, 2), 3, [[1, 1, 1]])
    with pytest.raises(ValueError):
        LinearCode(GF2, 3, [[1, 1]])
    with pytest.raises(ValueError):
        LinearCode(GF2, 3, [[1, 2, 1]])


def test_codeword_enumeration_guard():
    code = LinearCode(GF2, 24, [[1] * 24])
    assert code.distance is None
    with pytest.raises(SizeGuardError):
        next(code.codewords())
