""" Smooth local reconstruction for inner codes

A scheme picks, for a position i, a random set of other positions Q(i)
and recovers c[i] from c restricted to Q(i) for every codeword c. All
schemes here are linear: the reconstruction is sum(coeff * value) mod p,
with the coefficients carried on the query itself. Pad queries carry
coefficient 0 and so never influence the result.
"""
import logging
from fractions import Fraction

import numpy as np
from scipy import stats

from tanner_lcc.codes.finite_field import make_field
from tanner_lcc.codes.linear_code import LinearCode

LOG = logging.getLogger(__name__)


class Query(object):
    """ One sampled query set.

    :param positions: queried coordinates, in slot order
    :param coeffs: reconstruction coefficient per slot (0 for pads)
    :param real: boolean mask, False on pad slots
    :param provenance: index of the parity row (flat) the real queries came from
    """
    __slots__ = ('positions', 'coeffs', 'real', 'provenance')

    def __init__(self, positions, coeffs, real=None, provenance=None):
        self.positions = np.asarray(positions, dtype=np.int64)
        self.coeffs = np.asarray(coeffs, dtype=np.int64)
        self.real = np.ones(len(self.positions), dtype=bool) if real is None else np.asarray(real, dtype=bool)
        self.provenance = provenance

    def __len__(self):
        return len(self.positions)

    def __repr__(self):
        return '<Query {} from row {}>'.format(self.positions.tolist(), self.provenance)


class AuditTable(object):
    """ Per-position query frequencies for one reconstructed position.
    """

    def __init__(self, position, counts, expected, exhaustive, statistic=None, p_value=None):
        self.position = position
        self.counts = counts
        self.expected = expected
        self.exhaustive = exhaustive
        self.statistic = statistic
        self.p_value = p_value

    @property
    def uniform(self):
        support = self.expected > 0
        if self.exhaustive:
            return bool(np.all(self.counts[support] == self.counts[support][0])
                        and not np.any(self.counts[~support]))
        return self.p_value is not None and self.p_value > 0.001

    def rows(self):
        return [{'position': y, 'count': int(self.counts[y]), 'expected': float(self.expected[y])}
                for y in range(len(self.counts))]


class SmoothReconstruction(object):
    """ Base class of (Q, A) schemes over a LinearCode.

    Subclasses fill in q0, s0 and the samplers.
    """
    padded = False

    def __init__(self, code):
        self.code = code
        self.p = code.p
        self.d = code.length
        self.q0 = None
        self.s0 = None

    def sample_queries(self, i, rng):
        raise NotImplementedError

    def sample_many(self, ports, rng):
        """ Batch sampler.

        :returns: (positions, coeffs), both of shape (len(ports), q0)
        """
        raise NotImplementedError

    def support(self, i):
        """ Boolean mask of positions that can be queried for position i.
        """
        raise NotImplementedError

    def reconstruct(self, values, i, query=None):
        """ Recover the symbol at position i from the queried values.

        :param values: symbols aligned with the query slots
        :param i: reconstructed position
        :param query: the Query the values answer; required when coefficients vary
        """
        values = np.asarray(values, dtype=np.int64)
        coeffs = query.coeffs if query is not None else self.default_coeffs(i)
        if values.shape[-1] != len(coeffs):
            raise ValueError('expected {} values, got {}'.format(len(coeffs), values.shape[-1]))
        return int((values @ coeffs) % self.p)

    def default_coeffs(self, i):
        raise ValueError('{} needs the sampled query to reconstruct'.format(type(self).__name__))

    def pad_to_perfect(self):
        return pad_to_perfect(self)

    def exact_marginal(self, i):
        """ Exact probability of each position under one uniformly chosen slot.
        """
        raise NotImplementedError

    def to_dict(self):
        return {'scheme': type(self).__name__, 'q0': self.q0, 's0': self.s0, 'd': self.d}


class ParityReconstruction(SmoothReconstruction):
    """ Reconstruction from a family of parity rows of equal support size.

    For position i a row h with h_i != 0 is chosen uniformly among the rows
    through i; the queries are the other points of its support in ascending
    order and c[i] = sum_y (-h_y / h_i) c[y]. With affine-flat incidence rows
    this is the flat scheme; with one full-support row it is the
    single-parity scheme.

    :param code: LinearCode the rows are checks of
    :param rows: parity rows, default the code's own parity matrix
    """

    def __init__(self, code, rows=None):
        super(ParityReconstruction, self).__init__(code)
        rows = code.parity if rows is None else np.asarray(rows, dtype=np.int64) % self.p
        if rows.ndim != 2 or rows.shape[1] != self.d or rows.shape[0] == 0:
            raise ValueError('need at least one parity row of length {}'.format(self.d))
        if np.any((rows @ code.generator.T) % self.p):
            raise ValueError('rows are not parity checks of the code')
        weights = np.count_nonzero(rows, axis=1)
        if np.any(weights != weights[0]) or weights[0] < 2:
            raise ValueError('rows must share one support size of at least 2')
        self.rows = rows
        self.q0 = int(weights[0]) - 1

        field = code.field
        self._through = []
        self._positions = []
        self._coeffs = []
        s0 = None
        for i in range(self.d):
            through = np.nonzero(rows[:, i])[0]
            if through.size == 0:
                raise ValueError('position {} lies on no parity row'.format(i))
            pos = np.empty((through.size, self.q0), dtype=np.int64)
            coeffs = np.empty((through.size, self.q0), dtype=np.int64)
            for t, row_id in enumerate(through):
                row = rows[row_id]
                others = np.nonzero(row)[0]
                others = others[others != i]
                neg_inv = field.neg_idx(field.inv_idx(int(row[i])))
                pos[t] = others
                coeffs[t] = field.mul_many(neg_inv, row[others])
            counts = np.bincount(pos.ravel(), minlength=self.d)
            support = counts[counts > 0]
            if np.any(support != support[0]):
                raise ValueError('rows through position {} do not query their support uniformly'.format(i))
            if s0 is None:
                s0 = support.size
            elif s0 != support.size:
                raise ValueError('support size differs between positions')
            self._through.append(through)
            self._positions.append(pos)
            self._coeffs.append(coeffs)
        self.s0 = s0

        # Rectangular tables when every position lies on the same number of rows
        sizes = set(t.size for t in self._through)
        self._uniform_tables = len(sizes) == 1
        if self._uniform_tables:
            self._pos_table = np.stack(self._positions)
            self._coeff_table = np.stack(self._coeffs)
            self._row_table = np.stack(self._through)

        self.constant_coeffs = bool(np.all(np.concatenate([c.ravel() for c in self._coeffs]) == self._coeffs[0][0, 0]))

    def default_coeffs(self, i):
        if not self.constant_coeffs:
            return super(ParityReconstruction, self).default_coeffs(i)
        return np.full(self.q0, self._coeffs[0][0, 0], dtype=np.int64)

    def rows_through(self, i):
        return self._through[i]

    def queries_through(self, i):
        """ Every possible query for position i: (positions, coeffs), one row per parity row.
        """
        return self._positions[i], self._coeffs[i]

    def sample_queries(self, i, rng):
        t = int(rng.integers(self._through[i].size))
        return Query(self._positions[i][t], self._coeffs[i][t], provenance=int(self._through[i][t]))

    def sample_many(self, ports, rng):
        ports = np.asarray(ports, dtype=np.int64)
        if self._uniform_tables:
            choice = rng.integers(self._pos_table.shape[1], size=ports.shape)
            return self._pos_table[ports, choice], self._coeff_table[ports, choice]
        pos = np.empty(ports.shape + (self.q0,), dtype=np.int64)
        coeffs = np.empty_like(pos)
        for k, i in enumerate(ports.ravel()):
            q = self.sample_queries(int(i), rng)
            pos.reshape(-1, self.q0)[k] = q.positions
            coeffs.reshape(-1, self.q0)[k] = q.coeffs
        return pos, coeffs

    def support(self, i):
        mask = np.zeros(self.d, dtype=bool)
        mask[self._positions[i].ravel()] = True
        return mask

    def exhaustive_counts(self, i):
        """ How often each position is queried over all rows through i.
        """
        return np.bincount(self._positions[i].ravel(), minlength=self.d)

    def exact_marginal(self, i):
        counts = self.exhaustive_counts(i)
        total = int(counts.sum())
        return [Fraction(int(c), total) for c in counts]

    def to_dict(self):
        out = super(ParityReconstruction, self).to_dict()
        out['rows'] = int(self.rows.shape[0])
        return out


class PaddedReconstruction(SmoothReconstruction):
    """ Perfectly smooth version of an s0-smooth scheme.

    Each real query set gets d - s0 pad positions. Pads for position i are
    drawn from the distribution that tops the real query mass up to
    q0'/d on every coordinate, then the q0' slots are shuffled, so each
    slot on its own is uniform over all d positions.
    """
    padded = True

    def __init__(self, base):
        super(PaddedReconstruction, self).__init__(base.code)
        if base.s0 >= base.d:
            raise ValueError('scheme is already perfectly smooth')
        self.base = base
        self.pads = base.d - base.s0
        self.q0 = base.q0 + self.pads
        self.s0 = base.d

        d = self.d
        self._pad_probs = np.empty((d, d))
        for i in range(d):
            inside = base.support(i)
            probs = np.full(d, self.q0 / float(d * self.pads))
            probs[inside] = (self.q0 / float(d) - base.q0 / float(base.s0)) / self.pads
            if probs.min() < -1e-12:
                raise ValueError('cannot pad a scheme with q0 > s0')
            probs = np.clip(probs, 0.0, None)
            self._pad_probs[i] = probs / probs.sum()
        self._pad_cdf = np.cumsum(self._pad_probs, axis=1)

    def _draw_pads(self, ports, rng):
        u = rng.random(ports.shape + (self.pads,))
        cdf = self._pad_cdf[ports]
        idx = (cdf[..., None, :] <= u[..., :, None]).sum(axis=-1)
        return np.minimum(idx, self.d - 1)

    def sample_queries(self, i, rng):
        real = self.base.sample_queries(i, rng)
        pads = self._draw_pads(np.array(i), rng)
        positions = np.concatenate([real.positions, pads])
        coeffs = np.concatenate([real.coeffs, np.zeros(self.pads, dtype=np.int64)])
        mask = np.concatenate([np.ones(len(real), dtype=bool), np.zeros(self.pads, dtype=bool)])
        order = rng.permutation(self.q0)
        return Query(positions[order], coeffs[order], mask[order], provenance=real.provenance)

    def sample_many(self, ports, rng):
        ports = np.asarray(ports, dtype=np.int64)
        pos, coeffs = self.base.sample_many(ports, rng)
        pads = self._draw_pads(ports, rng)
        pos = np.concatenate([pos, pads], axis=-1)
        coeffs = np.concatenate([coeffs, np.zeros(pads.shape, dtype=np.int64)], axis=-1)
        order = np.argsort(rng.random(pos.shape), axis=-1)
        return np.take_along_axis(pos, order, axis=-1), np.take_along_axis(coeffs, order, axis=-1)

    def support(self, i):
        return np.ones(self.d, dtype=bool)

    def default_coeffs(self, i):
        raise ValueError('padded schemes shuffle their slots; pass the sampled query')

    def exact_marginal(self, i):
        base = self.base.exact_marginal(i)
        inside = self.base.support(i)
        outside_pad = Fraction(self.q0, self.d * self.pads)
        inside_pad = (Fraction(self.q0, self.d) - Fraction(self.base.q0, self.base.s0)) / self.pads
        out = []
        for y in range(self.d):
            pad = inside_pad if inside[y] else outside_pad
            out.append((base[y] * self.base.q0 + pad * self.pads) / self.q0)
        return out

    def to_dict(self):
        out = super(PaddedReconstruction, self).to_dict()
        out['base'] = self.base.to_dict()
        return out


def pad_to_perfect(recon):
    """ Perfectly smooth scheme with q0 + (d - s0) queries; identity when s0 = d.
    """
    if recon.s0 == recon.d:
        return recon
    return PaddedReconstruction(recon)


def smoothness_audit(recon, i, trials=None, rng=None, exhaustive=False):
    """ Query frequencies of each position when reconstructing position i.

    In exhaustive mode every row through i is counted once; otherwise
    ``trials`` query sets are sampled and a chi-square statistic against
    the uniform distribution on the support is attached.

    :returns: AuditTable
    """
    if exhaustive:
        if not hasattr(recon, 'exhaustive_counts'):
            raise ValueError('{} has no exhaustive audit'.format(type(recon).__name__))
        counts = recon.exhaustive_counts(i)
        support = recon.support(i)
        expected = np.where(support, counts.sum() / float(support.sum()), 0.0)
        return AuditTable(i, counts, expected, exhaustive=True)

    if not trials or rng is None:
        raise ValueError('sampled audit needs trials and rng')
    ports = np.full(trials, i, dtype=np.int64)
    pos, _ = recon.sample_many(ports, rng)
    counts = np.bincount(pos.ravel(), minlength=recon.d)
    support = recon.support(i)
    expected = np.where(support, pos.size / float(support.sum()), 0.0)
    statistic, p_value = stats.chisquare(counts[support], expected[support])
    return AuditTable(i, counts, expected, exhaustive=False, statistic=float(statistic), p_value=float(p_value))


class InnerCode(object):
    """ An inner code together with its smooth reconstruction.

    ``recon`` is the native scheme, ``padded`` its perfectly smooth version
    used to grow query trees.
    """

    def __init__(self, code, recon, name, geometry=None):
        self.code = code
        self.recon = recon
        self.padded = pad_to_perfect(recon)
        self.name = name
        self.geometry = geometry
        self.warnings = list(code.warnings)
        if recon.q0 == 1:
            msg = '{}: query sets have a single point; the scheme is degenerate'.format(name)
            self.warnings.append(msg)
            LOG.warning(msg)
        self.degenerate = code.degenerate or recon.q0 == 1

    @property
    def d(self):
        return self.code.length

    def to_dict(self):
        out = {
            'name': self.name,
            'code': self.code.to_dict(),
            'q0': self.recon.q0,
            's0': self.recon.s0,
            'q0_padded': self.padded.q0,
            'degenerate': self.degenerate,
        }
        if self.geometry is not None:
            out['geometry'] = self.geometry.to_dict()
        return out


def single_parity_inner(p, d):
    """ Single parity check code of length d over GF(p) with its (d-1)-smooth scheme.
    """
    field = make_field(p, 1)
    code = LinearCode(field, d, [[1] * d])
    return InnerCode(code, ParityReconstruction(code), 'parity({})'.format(d))
