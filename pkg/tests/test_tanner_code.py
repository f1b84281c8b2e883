import numpy as np
import pytest

from tanner_lcc.codes.smooth_recon import single_parity_inner
from tanner_lcc.codes.tanner_code import TannerCode
from tanner_lcc.common import SizeGuardError
from tanner_lcc.graphs.expander_graph import complete_graph, double_cover, random_regular


def test_k4_single_parity_dimension(parity_k4):
    code = parity_k4
    assert code.N == 12
    assert code.global_parity_matrix().shape == (8, 12)
    # the cover of K4 is the cube graph: cycle space of dimension 12 - 8 + 1
    assert code.k == 5
    assert code.k >= code.rate_bound == 4


def test_generator_rows_are_codewords(parity_gf3):
    code = parity_gf3
    for row in code.generator:
        assert code.is_codeword(row)
    assert code.k >= code.rate_bound


def test_local_views_of_a_codeword(parity_gf3, rng):
    code = parity_gf3
    c = code.random_codeword(rng)
    views = code.local_views(c)
    assert views.shape == (2 * code.n, code.d)
    assert not (views.sum(axis=1) % 3).any()
    assert (code.local_view(c, code.n + 2) == views[code.n + 2]).all()
    assert (code.local_view(c, 1) == c[4:8]).all()


def test_flipping_one_edge_breaks_two_views(parity_k4):
    code = parity_k4
    word = code.zero_codeword()
    word[7] = 1
    assert not code.is_codeword(word)
    broken = np.nonzero(code.local_views(word).sum(axis=1) % 2)[0]
    assert len(broken) == 2
    assert broken[0] < code.n <= broken[1]


def test_affine_inner_code_warns_on_low_rate(ag24_code):
    assert ag24_code.r0 == pytest.approx(7 / 16.0)
    assert any('not above 1/2' in w for w in ag24_code.warnings)


def test_degree_must_match_inner_length():
    with pytest.raises(ValueError):
        TannerCode(single_parity_inner(2, 4), double_cover(complete_graph(4)))


def test_dense_elimination_guard(ag24):
    code = TannerCode(ag24, double_cover(random_regular(300, 16, 1)))
    with pytest.raises(SizeGuardError):
        code.compute_dimension_and_generator()
    assert code.global_parity_matrix().shape == (600 * 9, 4800)
    with pytest.raises(ValueError):
        code.random_codeword(np.random.default_rng(0))


def test_word_files(parity_gf3, tmp_path, rng):
    code = parity_gf3
    c = code.random_codeword(rng)
    path = str(tmp_path / 'c.bin')
    code.write_word(path, c)
    assert (code.read_word(path) == c).all()

    other = TannerCode(single_parity_inner(3, 4), double_cover(random_regular(10, 4, 8)))
    with pytest.raises(ValueError):
        other.read_word(path)


def test_wrong_word_length(parity_k4):
    with pytest.raises(ValueError):
        parity_k4.is_codeword(np.zeros(11, dtype=np.int64))
