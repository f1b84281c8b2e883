""" Experiment suites

Each suite returns a SuiteResult holding its CSV rows and a pass flag.
Randomness comes from seed substreams addressed by (stream, grid index,
trial), so running trials on several threads gives the same rows.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from tanner_lcc.codes.smooth_recon import ParityReconstruction, smoothness_audit
from tanner_lcc.codes.tanner_code import DIMENSION_LIMIT, TannerCode
from tanner_lcc.common import seeds
from tanner_lcc.experiment import stats
from tanner_lcc.experiment.noise import NoiseModel, corrupt, corruption_mask
from tanner_lcc.graphs.expander_graph import (EDGE_WALK_LIMIT, complete_graph, cycle_graph,
                                              double_cover, edge_walk_spectrum_check,
                                              leaf_distribution_check, random_regular, random_walk)
from tanner_lcc.local_corrector.corrector import correct
from tanner_lcc.local_corrector.scoring import separation_holds
from tanner_lcc.local_corrector.trees import evaluate_tree, make_tree, tree_distance

LOG = logging.getLogger(__name__)

SUCCESS_HEADER = ['rho', 'successes', 'trials', 'mean_queries', 'wilson_low']
WALK_HEADER = ['gamma', 'L', 'empirical_tail', 'kl_bound', 'pass']


class SuiteResult(object):
    """ Rows and verdict of one suite.

    :param name: suite name
    :param passed: True, False, or None for suites without a pass criterion
    :param tables: {csv file name: (header, rows)}
    """

    def __init__(self, name, passed, tables=None, details=None):
        self.name = name
        self.passed = passed
        self.tables = tables or {}
        self.details = details or {}

    def to_dict(self):
        return {'name': self.name, 'passed': self.passed, 'details': self.details}


def _map(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def sweep_positions(N, trials):
    """ Every position when trials >= N, else trials evenly spaced positions.
    """
    if trials >= N:
        return np.arange(N)
    return np.unique(np.linspace(0, N - 1, trials).round().astype(np.int64))


def run_trial(code, params, rho, root, grid_index, trial, codeword='zero', position=None, noise=None):
    """ One corrupt-then-correct trial on substream (SUCCESS_TRIAL, grid_index, trial).
    """
    rng = seeds.substream(root, seeds.SUCCESS_TRIAL, grid_index, trial)
    word = code.random_codeword(rng) if codeword == 'random' else code.zero_codeword()
    model = noise if noise is not None else NoiseModel('random', rho)
    received, _ = corrupt(word, model, rng, code.p)
    e0 = int(rng.integers(code.N)) if position is None else int(position)
    return correct(code, received, e0, params, rng, truth=int(word[e0]))


def success_curve(code, params, rho_grid, trials, root, codeword='zero', positions='random',
                  threads=1, noise=None):
    """ Empirical success of correct() at each corruption rate.

    :param positions: 'random' draws the position inside each trial; 'all'
        sweeps positions (see sweep_positions)
    :returns: SuiteResult with success_curve.csv
    """
    if codeword == 'random' and code.generator is None:
        raise ValueError('random codewords need the generator; N = {} exceeds {}'.format(code.N, DIMENSION_LIMIT))
    if noise is not None and noise.kind == 'adversarial':
        fraction = noise.count(code.N) / float(code.N)
        if len(rho_grid) > 1:
            LOG.warning('adversarial noise ignores rho_grid; reporting one row at '
                        'the pattern fraction {}'.format(fraction))
        rho_grid = [fraction]
    rows = []
    records = []
    for j, rho in enumerate(rho_grid):
        if positions == 'all':
            sweep = sweep_positions(code.N, trials)
            jobs = list(enumerate(sweep.tolist()))
        else:
            jobs = [(t, None) for t in range(trials)]
        results = _map(lambda job: run_trial(code, params, rho, root, j, job[0], codeword, job[1], noise),
                       jobs, threads)
        successes = sum(1 for r in results if r.success)
        low, high = stats.wilson(successes, len(results))
        rows.append({
            'rho': rho,
            'successes': successes,
            'trials': len(results),
            'mean_queries': float(np.mean([r.leaf_reads for r in results])),
            'wilson_low': low,
            'wilson_high': high,
            'mean_distinct_queries': float(np.mean([r.queries for r in results])),
            'ambiguous': sum(1 for r in results if r.ambiguous),
        })
        records.append([r.to_dict() for r in results])
        LOG.info('rho = {}: {}/{} corrected (Wilson low {:.4f})'.format(rho, successes, len(results), low))
    monotone = monotone_audit(rows)
    accounting = all(r['leaf_reads'] == code.inner.padded.q0 ** (params.L1 + params.L2)
                     for batch in records for r in batch)
    zero_ok = all(row['successes'] == row['trials'] for row in rows if row['rho'] == 0.0)
    details = {'monotone': monotone, 'leaf_reads_exact': accounting, 'rho_zero_exact': zero_ok,
               'records': records}
    return SuiteResult('success_curve', monotone and accounting and zero_ok,
                       {'success_curve.csv': (SUCCESS_HEADER, rows)}, details)


def monotone_audit(rows):
    """ Success may only increase with rho when the Wilson intervals overlap.
    """
    ordered = sorted(rows, key=lambda r: r['rho'])
    for a, b in zip(ordered, ordered[1:]):
        if b['wilson_low'] > a['wilson_high']:
            return False
    return True


def walk_tail_check(cover, corrupted, gamma, length, trials, rng, lam, start='point'):
    """ Fraction of walks on H that cross at least gamma*L corrupted edges,
    against exp(-L D(gamma || rho + 2 lambda)).

    :param corrupted: boolean mask over the N edges
    :param start: 'point' (left vertex 0) or 'uniform'
    :returns: row dict with the WALK_HEADER columns and extras
    """
    corrupted = np.asarray(corrupted, dtype=bool)
    rho = corrupted.mean()
    _, edges = random_walk(cover, 0 if start == 'point' else 'uniform', length, rng, trials)
    hits = corrupted[edges].sum(axis=1)
    tail = float(np.mean(hits >= gamma * length))
    bound, hypothesis = stats.walk_tail_bound(gamma, rho, lam, length)
    se = stats.standard_error(tail, trials)
    return {
        'gamma': gamma,
        'L': length,
        'empirical_tail': tail,
        'kl_bound': bound,
        'pass': tail <= bound + 3.0 * se,
        'rho': float(rho),
        'lambda': lam,
        'hypothesis': hypothesis,
        'rho_above_6_lambda': bool(rho > 6.0 * lam),
        'standard_error': se,
        'start': start,
    }


def walk_tail_suite(graph, rho, gamma, length, trials, root, start='point'):
    cover = double_cover(graph)
    rng = seeds.substream(root, seeds.WALK)
    model = NoiseModel('random', rho)
    _, positions = corrupt(np.zeros(cover.N, dtype=np.int64), model, rng, 2)
    row = walk_tail_check(cover, corruption_mask(cover.N, positions), gamma, length, trials, rng,
                          graph.lam, start)
    if not row['hypothesis']:
        LOG.warning('rho + 2*lambda >= gamma; the tail bound is trivial')
    return SuiteResult('walk_tail', row['pass'], {'walk_tail.csv': (WALK_HEADER, [row])}, dict(row))


def reconstruction_failures(inner, codewords):
    """ Count (codeword, position, query) triples where reconstruction is wrong,
    over every query of the native scheme.
    """
    recon = inner.recon
    p = inner.code.p
    failures = 0
    for i in range(inner.d):
        positions, coeffs = recon.queries_through(i)
        values = codewords[:, positions]
        rebuilt = (values * coeffs[None, :, :]).sum(axis=2) % p
        failures += int(np.count_nonzero(rebuilt != codewords[:, i][:, None]))
    return failures


def sample_codewords(code, rng, limit=2 ** 16, count=1000):
    """ All codewords when p^k0 <= limit, else `count` random ones.
    """
    if code.p ** code.k0 <= limit:
        return np.concatenate(list(code.codewords()))
    return code.encode(rng.integers(code.p, size=(count, code.k0)))


def smoothness_suite(inner, trials, root):
    """ Exact audit of the native scheme at every position, a sampled audit
    of the padded scheme, and reconstruction exactness on codewords.
    """
    tables = {}
    exact = True
    if isinstance(inner.recon, ParityReconstruction):
        for i in range(inner.d):
            audit = smoothness_audit(inner.recon, i, exhaustive=True)
            exact = exact and audit.uniform
            if i == 0:
                tables['smoothness.csv'] = (['position', 'count', 'expected'], audit.rows())
    rng = seeds.substream(root, seeds.AUDIT)
    padded = smoothness_audit(inner.padded, 0, trials=trials, rng=rng)
    tables['smoothness_padded.csv'] = (['position', 'count', 'expected'], padded.rows())

    words = sample_codewords(inner.code, rng)
    failures = reconstruction_failures(inner, words)
    padded_failures = 0
    for i in range(inner.d):
        for c in words[:8]:
            q = inner.padded.sample_queries(i, rng)
            if inner.padded.reconstruct(c[q.positions], i, q) != c[i]:
                padded_failures += 1
    details = {
        'exhaustive_uniform': exact,
        'padded_p_value': padded.p_value,
        'codewords_checked': int(len(words)),
        'reconstruction_failures': failures,
        'padded_reconstruction_failures': padded_failures,
    }
    passed = exact and padded.uniform and failures == 0 and padded_failures == 0
    return SuiteResult('smoothness', passed, tables, details)


def spectrum_suite(graph, root, L1=None, tolerance=1e-8):
    """ Edge-walk operator check on K4, C6, a random (10, 4) graph and the run
    graph when small, plus the leaf-distribution claim on the run graph.
    """
    cases = [('K4', complete_graph(4)), ('C6', cycle_graph(6)),
             ('random_10_4', random_regular(10, 4, seeds.substream(root, seeds.GRAPH, 1)))]
    if graph.n <= EDGE_WALK_LIMIT:
        cases.append(('run_graph', graph))
    rows = []
    passed = True
    for name, g in cases:
        check = edge_walk_spectrum_check(g, tolerance)
        if g.lam is None:
            g.second_eigenvalue()
        rows.append({'graph': name, 'n': g.n, 'd': g.d, 'lambda': g.lam, 'rank_R': check.rank_r,
                     'operator_matches': check.operator_matches, 'pass': check.ok})
        passed = passed and check.ok
    details = {}
    if L1 is not None and L1 > 0:
        distance, bound, holds = leaf_distribution_check(graph, 0, L1)
        details = {'leaf_distance': distance, 'leaf_bound': bound, 'leaf_holds': holds,
                   'inverse_sqrt_n': graph.n ** -0.5}
        rows.append({'graph': 'leaf_distribution', 'n': graph.n, 'd': graph.d, 'lambda': graph.lam,
                     'rank_R': '', 'operator_matches': '', 'pass': holds})
        passed = passed and holds
    header = ['graph', 'n', 'd', 'lambda', 'rank_R', 'operator_matches', 'pass']
    return SuiteResult('spectrum', passed, {'spectrum.csv': (header, rows)}, details)


def rate_instances(d, count=5, limit=DIMENSION_LIMIT):
    """ The first `count` vertex counts n >= 4d with n*d even and n*d <= limit.
    """
    out = []
    n = 4 * d
    while len(out) < count and n * d <= limit:
        if (n * d) % 2 == 0:
            out.append(n)
        n += 1
    return out


def rate_suite(inner, root, count=5):
    """ k/N >= 2 r0 - 1 on several random graphs small enough for elimination.
    """
    rows = []
    passed = True
    for idx, n in enumerate(rate_instances(inner.d, count)):
        graph = random_regular(n, inner.d, seeds.substream(root, seeds.GRAPH, 2, idx))
        code = TannerCode(inner, double_cover(graph))
        k, _ = code.compute_dimension_and_generator()
        ok = k >= code.rate_bound
        passed = passed and ok
        rows.append({'n': n, 'd': inner.d, 'N': code.N, 'k': k, 'rate': k / float(code.N),
                     'rate_bound': 2 * inner.code.rate - 1, 'pass': ok})
    if len(rows) < count:
        LOG.warning('only {} rate instances fit the elimination limit'.format(len(rows)))
    header = ['n', 'd', 'N', 'k', 'rate', 'rate_bound', 'pass']
    return SuiteResult('rate', passed, {'rate.csv': (header, rows)})


def proposition_suite(code, depth, trials, root, rho=0.05):
    """ Evaluated trees of two codewords that differ at the root edge are at
    distance 1, and every consistent tree with a wrong root is separated
    from a noisy reading of the true tree.
    """
    if code.generator is None or code.k == 0:
        raise ValueError('the proposition suite needs a computed, nonzero generator')
    distance_ok = True
    separation_ok = True
    done = 0
    attempt = 0
    while done < trials:
        rng = seeds.substream(root, seeds.PROPOSITION, attempt)
        attempt += 1
        c1 = code.random_codeword(rng)
        c2 = code.random_codeword(rng)
        differ = np.nonzero(c1 != c2)[0]
        if differ.size == 0:
            continue
        e0 = int(differ[rng.integers(differ.size)])
        tree = make_tree(code, e0, depth, rng)
        t1 = evaluate_tree(tree, c1, code.p)
        t2 = evaluate_tree(tree, c2, code.p)
        distance_ok = distance_ok and tree_distance(t1, t2) == 1
        noisy, _ = corrupt(c1, NoiseModel('random', rho), rng, code.p)
        separation_ok = separation_ok and separation_holds(evaluate_tree(tree, noisy, code.p), t1)
        done += 1
    details = {'pairs': done, 'distance_one': distance_ok, 'separation': separation_ok}
    return SuiteResult('proposition', distance_ok and separation_ok, {}, details)


def equivariance_suite(code, params, trials, root):
    """ correct(w + c) = correct(w) + c[e0] with a shared seed.
    """
    if code.generator is None:
        raise ValueError('the equivariance suite needs a computed generator')
    p = code.p
    mismatches = 0
    for t in range(trials):
        rng = seeds.substream(root, seeds.EQUIVARIANCE, t, 0)
        w = rng.integers(p, size=code.N)
        c = code.random_codeword(rng)
        e0 = int(rng.integers(code.N))
        a = correct(code, w, e0, params, seeds.substream(root, seeds.EQUIVARIANCE, t, 1)).symbol
        b = correct(code, (w + c) % p, e0, params, seeds.substream(root, seeds.EQUIVARIANCE, t, 1)).symbol
        if b != (a + c[e0]) % p:
            mismatches += 1
    return SuiteResult('equivariance', mismatches == 0, {}, {'trials': trials, 'mismatches': mismatches})
