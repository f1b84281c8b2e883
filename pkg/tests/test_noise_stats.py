import math

import numpy as np
import pytest

from tanner_lcc.experiment import stats
from tanner_lcc.experiment.noise import NoiseModel, corrupt, corruption_mask, load_pattern


def test_kl_values():
    assert stats.kl(0.25, 0.1) == pytest.approx(0.0924, abs=1e-4)
    assert stats.kl(0.3, 0.3) == 0.0
    for g in np.linspace(0.05, 0.95, 7):
        for d in np.linspace(0.05, 0.95, 7):
            if g != d:
                assert stats.kl(g, d) > 0


@pytest.mark.parametrize('gamma,delta', [(0.0, 0.1), (0.25, 1.0), (1.0, 0.5)])
def test_kl_domain(gamma, delta):
    with pytest.raises(ValueError):
        stats.kl(gamma, delta)


def test_walk_tail_bound():
    bound, holds = stats.walk_tail_bound(0.25, 0.05, 0.1, 40)
    assert (bound, holds) == (1.0, False)
    bound, holds = stats.walk_tail_bound(0.25, 0.1, 0.03, 40)
    assert holds
    assert bound == pytest.approx(math.exp(-40 * stats.kl(0.25, 0.16)))


def test_wilson_interval():
    low, high = stats.wilson(50, 100)
    assert low == pytest.approx(0.4038, abs=1e-3)
    assert high == pytest.approx(0.5962, abs=1e-3)
    assert stats.wilson(0, 10)[0] == 0.0
    assert stats.wilson(10, 10)[1] == 1.0
    assert stats.wilson(200, 200)[0] > 0.98


@pytest.mark.parametrize('trials', [1, 7, 10, 200, 1000])
def test_wilson_endpoints_are_exact(trials):
    assert stats.wilson(trials, trials)[1] == 1.0
    assert stats.wilson(0, trials)[0] == 0.0
    assert stats.wilson(trials, trials)[0] < 1.0
    assert stats.wilson(0, trials)[1] > 0.0


def test_random_corruption_is_exact_and_reproducible():
    word = np.zeros(1000, dtype=np.int64)
    model = NoiseModel('random', 0.013)
    a, pos_a = corrupt(word, model, np.random.default_rng(4), 3)
    b, pos_b = corrupt(word, model, np.random.default_rng(4), 3)
    assert len(pos_a) == 13
    assert (a == b).all() and (pos_a == pos_b).all()
    assert (a[pos_a] != 0).all()
    assert np.count_nonzero(a) == 13
    assert corruption_mask(1000, pos_a).sum() == 13


def test_adversarial_pattern(tmp_path):
    path = tmp_path / 'pattern.txt'
    path.write_text('# one vertex\n0, 1 2\n3  # star\n')
    model = NoiseModel('adversarial', positions=load_pattern(str(path)), source=str(path))
    word, positions = corrupt(np.ones(8, dtype=np.int64), model, np.random.default_rng(0), 2)
    assert positions.tolist() == [0, 1, 2, 3]
    assert word.tolist() == [0, 0, 0, 0, 1, 1, 1, 1]
    with pytest.raises(ValueError):
        corrupt(np.ones(3, dtype=np.int64), model, np.random.default_rng(0), 2)


def test_bad_patterns_and_models(tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text('1 two 3\n')
    with pytest.raises(ValueError):
        load_pattern(str(path))
    with pytest.raises(ValueError):
        NoiseModel('random', 1.0)
    with pytest.raises(ValueError):
        NoiseModel('burst', 0.1)
    with pytest.raises(ValueError):
        NoiseModel('adversarial', 0.1)
