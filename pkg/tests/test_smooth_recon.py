from fractions import Fraction

import numpy as np
import pytest

from tanner_lcc.codes.finite_field import make_field
from tanner_lcc.codes.linear_code import LinearCode, repetition_checks
from tanner_lcc.codes.smooth_recon import (PaddedReconstruction, ParityReconstruction, pad_to_perfect,
                                           single_parity_inner, smoothness_audit)


def test_single_parity_scheme():
    inner = single_parity_inner(3, 4)
    recon = inner.recon
    assert recon.q0 == 3
    assert recon.s0 == 3
    q = recon.sample_queries(1, np.random.default_rng(0))
    assert q.positions.tolist() == [0, 2, 3]
    assert q.coeffs.tolist() == [2, 2, 2]
    assert recon.reconstruct([1, 1, 2], 1, q) == 2


def test_parity_scheme_recovers_every_codeword_symbol():
    inner = single_parity_inner(3, 5)
    words = np.concatenate(list(inner.code.codewords()))
    for i in range(5):
        positions, coeffs = inner.recon.queries_through(i)
        rebuilt = (words[:, positions[0]] * coeffs[0]).sum(axis=1) % 3
        assert (rebuilt == words[:, i]).all()


def test_rows_must_be_checks_of_the_code():
    code = LinearCode(make_field(2), 4, [[1, 1, 1, 1]])
    with pytest.raises(ValueError):
        ParityReconstruction(code, [[1, 1, 0, 0]])


def test_rows_must_have_one_support_size():
    code = LinearCode(make_field(2), 4, repetition_checks(4))
    rows = [[1, 1, 0, 0], [1, 1, 1, 1]]
    with pytest.raises(ValueError):
        ParityReconstruction(code, rows)


def test_exhaustive_audit_is_exactly_uniform(ag24):
    for i in range(ag24.d):
        audit = smoothness_audit(ag24.recon, i, exhaustive=True)
        assert audit.uniform
        assert audit.counts[i] == 0
        assert set(audit.counts.tolist()) == {0, 1}


def test_padded_scheme_is_perfectly_smooth(ag24):
    padded = ag24.padded
    assert isinstance(padded, PaddedReconstruction)
    assert padded.q0 == 4
    assert padded.s0 == 16
    for i in (0, 5, 15):
        assert padded.exact_marginal(i) == [Fraction(1, 16)] * 16


def test_padded_sampled_audit(ag24):
    audit = smoothness_audit(ag24.padded, 3, trials=20000, rng=np.random.default_rng(1))
    assert audit.counts.sum() == 80000
    assert audit.uniform


def test_padded_queries_reconstruct(ag24, rng):
    words = np.concatenate(list(ag24.code.codewords()))
    for c in words[::9]:
        for i in range(ag24.d):
            q = ag24.padded.sample_queries(i, rng)
            assert int(q.real.sum()) == 3
            assert not q.coeffs[~q.real].any()
            assert ag24.padded.reconstruct(c[q.positions], i, q) == c[i]


def test_padded_needs_the_query(ag24):
    with pytest.raises(ValueError):
        ag24.padded.reconstruct([0, 0, 0, 0], 0)


def test_batch_sampler_shapes(ag24, rng):
    ports = np.array([[0, 1], [2, 3], [4, 5]])
    pos, coeffs = ag24.padded.sample_many(ports, rng)
    assert pos.shape == (3, 2, 4)
    assert coeffs.shape == (3, 2, 4)
    assert (np.count_nonzero(coeffs, axis=-1) == 3).all()


def test_triangle_scheme_gets_one_pad():
    rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    recon = ParityReconstruction(LinearCode(make_field(2), 3, rows), rows)
    assert (recon.q0, recon.s0) == (1, 2)
    padded = pad_to_perfect(recon)
    assert padded.q0 == 2
    assert padded.exact_marginal(0) == [Fraction(1, 3)] * 3


def test_one_point_queries_are_degenerate():
    inner = single_parity_inner(2, 2)
    assert inner.recon.q0 == 1
    assert inner.degenerate


def test_audit_needs_trials():
    inner = single_parity_inner(2, 4)
    with pytest.raises(ValueError):
        smoothness_audit(inner.padded, 0)
