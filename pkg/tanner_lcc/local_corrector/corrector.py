""" Local correction of one codeword symbol

correct() grows an outer query tree T of depth L1 from the target edge,
then for every distinct edge on T's leaves grows and reads an inner tree
T_e of depth L2, corrects its root with the Score dynamic program, puts
the corrected symbols on T's leaves and folds them up to the root with the
inner reconstruction.
"""
import logging
import math

import numpy as np

from tanner_lcc.experiment.stats import kl
from tanner_lcc.graphs.expander_graph import ramanujan_bound
from tanner_lcc.local_corrector.scoring import correct_subtree
from tanner_lcc.local_corrector.trees import evaluate_tree, fold_labels, make_tree

LOG = logging.getLogger(__name__)


class CorrectionParams(object):
    """ Tree depths and thresholds for one corrector configuration.
    """

    def __init__(self, gamma, zeta, L1, L2, C=None, method='auto'):
        if not 0.0 < gamma < 0.5:
            raise ValueError('gamma must lie in (0, 1/2), got {}'.format(gamma))
        if zeta <= gamma:
            raise ValueError('zeta must exceed gamma = {}, got {}'.format(gamma, zeta))
        if L1 < 0 or L2 < 0:
            raise ValueError('tree depths must be non-negative')
        self.gamma = gamma
        self.zeta = zeta
        self.L1 = int(L1)
        self.L2 = int(L2)
        self.C = C
        self.method = method

    def to_dict(self):
        return {'gamma': self.gamma, 'zeta': self.zeta, 'L1': self.L1, 'L2': self.L2,
                'C': self.C, 'method': self.method}


class Plan(object):
    """ Planner output: parameters plus the feasibility report.
    """

    def __init__(self, params, report, warnings):
        self.params = params
        self.report = report
        self.warnings = warnings

    def to_dict(self):
        out = {'params': self.params.to_dict()}
        out.update(self.report)
        out['warnings'] = list(self.warnings)
        return out


def depth_for_mixing(n, d):
    """ Smallest even integer at least ln(n) / ln(d/4).
    """
    if d <= 4:
        raise ValueError('ln(d/4) is not positive for d = {}; give L1 explicitly'.format(d))
    x = math.log(n) / math.log(d / 4.0)
    L1 = max(int(math.ceil(x - 1e-9)), 0)
    return L1 + (L1 % 2)


def depth_ratio(q0, gamma, zeta):
    """ Smallest integer C with ln(q0) - C(zeta - gamma) < -1, plus one.
    """
    return int(math.ceil((1.0 + math.log(q0)) / (zeta - gamma))) + 1


def plan_parameters(rho, q0, d, lam, n, gamma=0.25, zeta=None, C=None, L1=None, L2=None, method='auto'):
    """ Choose L1, C and L2 and report whether the correction guarantee applies.

    :param q0: arity of the query trees (the padded query count)
    :param lam: measured second eigenvalue of the graph
    :returns: Plan
    """
    if not 0.0 < gamma < 0.5:
        raise ValueError('gamma must lie in (0, 1/2), got {}'.format(gamma))
    if zeta is None:
        zeta = 2.0 * math.log(q0)
    if zeta <= gamma:
        raise ValueError('zeta must exceed gamma = {}, got {}'.format(gamma, zeta))
    warnings = []

    mixing_depth = depth_for_mixing(n, d) if d > 4 else None
    if L1 is None:
        L1 = depth_for_mixing(n, d)
    if C is None:
        C = depth_ratio(q0, gamma, zeta)
    if L2 is None:
        L2 = C * L1
    params = CorrectionParams(gamma, zeta, L1, L2, C, method)

    threshold = gamma * (math.exp(zeta) * q0) ** (-1.0 / gamma)
    noise_ok = rho + 2.0 * lam < threshold
    expansion_ok = threshold > 8.0 * lam
    if not noise_ok:
        warnings.append('rho + 2*lambda = {:.4g} is not below {:.4g}'.format(rho + 2.0 * lam, threshold))
    if not expansion_ok:
        warnings.append('threshold {:.4g} is not above 8*lambda = {:.4g}'.format(threshold, 8.0 * lam))
    if mixing_depth is not None and L1 < mixing_depth:
        warnings.append('L1 = {} is below the mixing depth {}'.format(L1, mixing_depth))

    epsilon = None
    if d > 4 and q0 > 1:
        epsilon = (1.0 + (math.log(q0) + 1.0) / (zeta - gamma)) * math.log(q0) / math.log(d / 4.0)

    # q0^(L1+L2) (e^zeta q0)^(-L2) e^(gamma L2), in logs
    log_union = L1 * math.log(q0) - L2 * (zeta - gamma)
    delta = rho + 2.0 * lam
    if 0.0 < delta < gamma:
        log_kl_union = (L1 + L2) * math.log(q0) - L2 * kl(gamma, delta)
        kl_union = min(1.0, math.exp(min(log_kl_union, 0.0)))
    else:
        kl_union = 1.0

    report = {
        'rho': rho,
        'q0': q0,
        'd': d,
        'n': n,
        'lambda': lam,
        'ramanujan_lambda': ramanujan_bound(d),
        'threshold': threshold,
        'noise_feasible': noise_ok,
        'expansion_feasible': expansion_ok,
        'feasible': noise_ok and expansion_ok,
        'rho_above_6_lambda': rho > 6.0 * lam,
        'mixing_depth': mixing_depth,
        'epsilon': epsilon,
        'predicted_leaf_reads': q0 ** (L1 + L2),
        'failure_bound': min(1.0, math.exp(min(log_union, 0.0))) if noise_ok else 1.0,
        'failure_bound_kl': kl_union,
        'target_failure': math.exp(-L1),
    }
    for w in warnings:
        LOG.warning(w)
    return Plan(params, report, warnings)


class CorrectionResult(object):
    """ Trial record of one call to correct().
    """

    def __init__(self, position, symbol, queries, leaf_reads, score_tables, denominator,
                 ambiguous, params, truth=None, warnings=None):
        self.position = position
        self.symbol = symbol
        self.queries = queries
        self.leaf_reads = leaf_reads
        self.score_tables = score_tables
        self.denominator = denominator
        self.ambiguous = ambiguous
        self.params = params
        self.truth = truth
        self.warnings = warnings or []

    @property
    def success(self):
        return self.truth is not None and self.symbol == self.truth

    def to_dict(self):
        return {
            'position': self.position,
            'returned': self.symbol,
            'truth': self.truth,
            'queries': self.queries,
            'leaf_reads': self.leaf_reads,
            'score_tables': dict((str(e), counts) for e, counts in sorted(self.score_tables.items())),
            'score_denominator': self.denominator,
            'ambiguous': self.ambiguous,
            'params': self.params.to_dict(),
            'warnings': list(self.warnings),
        }


def correct(code, word, e0, params, rng, truth=None, warnings=None):
    """ Locally correct the symbol of word at edge e0.

    :param code: TannerCode
    :param word: possibly corrupted word of length N
    :param params: CorrectionParams
    :param rng: numpy Generator; tree shapes depend on it alone, never on the word
    :returns: CorrectionResult
    """
    word = np.asarray(word, dtype=np.int64)
    if not 0 <= e0 < code.N:
        raise ValueError('position {} out of range [0, {})'.format(e0, code.N))
    p = code.p
    outer = make_tree(code, e0, params.L1, rng)
    leaves = outer.leaf_edges

    corrected = {}
    score_tables = {}
    read = set()
    ambiguous = False
    inner_leaves = {}
    for e in np.unique(leaves).tolist():
        tree = make_tree(code, e, params.L2, rng)
        tau = evaluate_tree(tree, word, p)
        result = correct_subtree(tau, params.method)
        corrected[e] = result.symbol
        score_tables[e] = result.counts
        ambiguous = ambiguous or result.ambiguous
        read.update(tree.edges.tolist())
        inner_leaves[e] = int(tree.leaf_edges.size)

    leaf_labels = np.array([corrected[e] for e in leaves.tolist()], dtype=np.int64)
    folded = fold_labels(outer, leaf_labels, p)
    leaf_reads = sum(inner_leaves[e] for e in leaves.tolist())
    return CorrectionResult(int(e0), folded.root, len(read), leaf_reads, score_tables,
                            params.L2 + 1, ambiguous, params, truth, warnings)
