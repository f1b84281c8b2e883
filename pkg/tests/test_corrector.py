import math

import numpy as np
import pytest

from tanner_lcc.common import seeds
from tanner_lcc.experiment.noise import NoiseModel, corrupt
from tanner_lcc.local_corrector.corrector import (CorrectionParams, correct, depth_for_mixing,
                                                  depth_ratio, plan_parameters)


def test_depth_for_mixing():
    assert depth_for_mixing(256, 16) == 4
    assert depth_for_mixing(1000, 16) == 6
    with pytest.raises(ValueError):
        depth_for_mixing(100, 4)


def test_depth_ratio():
    assert depth_ratio(3, 0.25, 3.0) == 2
    assert depth_ratio(4, 0.25, 2 * math.log(4)) == 2


def test_planner_defaults():
    plan = plan_parameters(0.0, 3, 16, 0.1, 256)
    assert plan.params.L1 == 4
    assert plan.params.zeta == pytest.approx(2 * math.log(3))
    assert plan.params.L2 == plan.params.C * 4
    assert plan.report['mixing_depth'] == 4
    assert plan.report['target_failure'] == pytest.approx(math.exp(-4))


def test_planner_feasibility_threshold():
    threshold = 0.25 * (math.exp(3.0) * 3) ** -4
    ok = plan_parameters(threshold / 2, 3, 16, 0.0, 256, gamma=0.25, zeta=3.0)
    bad = plan_parameters(threshold * 2, 3, 16, 0.0, 256, gamma=0.25, zeta=3.0)
    assert ok.report['threshold'] == pytest.approx(threshold)
    assert ok.report['feasible']
    assert not bad.report['feasible']
    assert bad.warnings


def test_planner_query_prediction():
    plan = plan_parameters(0.0, 3, 16, 0.3, 256, L1=4, L2=8)
    assert plan.report['predicted_leaf_reads'] == 531441
    assert not plan.report['expansion_feasible']


def test_planner_small_degree_needs_L1():
    with pytest.raises(ValueError):
        plan_parameters(0.0, 3, 4, 0.1, 100)
    plan = plan_parameters(0.0, 3, 4, 0.1, 100, L1=2)
    assert plan.report['mixing_depth'] is None
    assert plan.report['epsilon'] is None


def test_parameter_validation():
    with pytest.raises(ValueError):
        plan_parameters(0.0, 3, 16, 0.1, 256, gamma=0.6)
    with pytest.raises(ValueError):
        CorrectionParams(0.25, 0.2, 2, 2)
    with pytest.raises(ValueError):
        CorrectionParams(0.25, 1.0, -1, 2)


def test_clean_codeword_is_returned(parity_gf3):
    code = parity_gf3
    params = CorrectionParams(0.25, 2.0, 2, 2)
    c = code.random_codeword(np.random.default_rng(3))
    for e0 in range(0, code.N, 7):
        result = correct(code, c, e0, params, seeds.substream(1, seeds.CORRECT, e0), truth=int(c[e0]))
        assert result.success
        assert result.leaf_reads == 4 ** 4
        assert result.denominator == 3
        assert 0 < result.queries <= code.N


@pytest.mark.parametrize('L1,L2', [(0, 0), (0, 3), (1, 2), (3, 0)])
def test_leaf_reads_follow_the_trees_built(parity_gf3, L1, L2):
    params = CorrectionParams(0.25, 2.0, L1, L2)
    word = np.random.default_rng(8).integers(3, size=parity_gf3.N)
    result = correct(parity_gf3, word, 5, params, seeds.substream(2, seeds.CORRECT, 5))
    assert result.leaf_reads == 4 ** (L1 + L2)
    assert result.queries <= min(parity_gf3.N, sum(4 ** t for t in range(L1 + L2 + 1)))


def test_trial_record(parity_k4):
    params = CorrectionParams(0.25, 2.0, 1, 1)
    result = correct(parity_k4, parity_k4.zero_codeword(), 0, params, np.random.default_rng(0), truth=0)
    record = result.to_dict()
    assert set(record) == {'position', 'returned', 'truth', 'queries', 'leaf_reads', 'score_tables',
                           'score_denominator', 'ambiguous', 'params', 'warnings'}
    assert record['returned'] == 0
    assert all(isinstance(k, str) for k in record['score_tables'])


def test_position_out_of_range(parity_k4):
    with pytest.raises(ValueError):
        correct(parity_k4, parity_k4.zero_codeword(), 12, CorrectionParams(0.25, 2.0, 1, 1),
                np.random.default_rng(0))


def test_translation_equivariance(parity_gf3):
    code = parity_gf3
    params = CorrectionParams(0.25, 2.0, 2, 2)
    outer = np.random.default_rng(99)
    for t in range(25):
        w = outer.integers(3, size=code.N)
        c = code.random_codeword(outer)
        e0 = int(outer.integers(code.N))
        a = correct(code, w, e0, params, seeds.substream(4, seeds.EQUIVARIANCE, t)).symbol
        b = correct(code, (w + c) % 3, e0, params, seeds.substream(4, seeds.EQUIVARIANCE, t)).symbol
        assert b == (a + c[e0]) % 3


def test_sparse_noise_on_the_affine_code(ag24_code):
    code = ag24_code
    params = CorrectionParams(0.25, 2.0, 2, 2)
    successes = 0
    for t in range(20):
        rng = seeds.substream(6, seeds.SUCCESS_TRIAL, 0, t)
        word, _ = corrupt(code.zero_codeword(), NoiseModel('random', 0.002), rng, 2)
        e0 = int(rng.integers(code.N))
        successes += correct(code, word, e0, params, rng, truth=0).success
    assert successes >= 18
