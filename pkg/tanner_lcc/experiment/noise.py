""" Noise injection
"""
import logging
import math
import re

import numpy as np

LOG = logging.getLogger(__name__)

MODELS = ('random', 'adversarial')


class NoiseModel(object):
    """ Which positions get corrupted.

    In random mode exactly floor(rho * N) distinct positions are drawn; in
    adversarial mode the positions come from a pattern file. Every corrupted
    symbol is replaced by a uniformly chosen different symbol.
    """

    def __init__(self, kind='random', rho=0.0, positions=None, source=None):
        if kind not in MODELS:
            raise ValueError('unknown noise model {!r}'.format(kind))
        if not 0.0 <= rho < 1.0:
            raise ValueError('rho must lie in [0, 1), got {}'.format(rho))
        if kind == 'adversarial' and positions is None:
            raise ValueError('adversarial noise needs a position list')
        self.kind = kind
        self.rho = rho
        self.positions = None if positions is None else np.unique(np.asarray(positions, dtype=np.int64))
        self.source = source

    @classmethod
    def from_config(cls, noise):
        if noise['model'] == 'adversarial':
            return cls('adversarial', noise['rho'], load_pattern(noise['pattern_file']), noise['pattern_file'])
        return cls('random', noise['rho'])

    def count(self, N):
        if self.kind == 'adversarial':
            return int(self.positions.size)
        return int(math.floor(self.rho * N + 1e-9))

    def to_dict(self):
        out = {'kind': self.kind, 'rho': self.rho}
        if self.source:
            out['pattern_file'] = self.source
        return out


def load_pattern(path):
    """ Read corrupted positions: integers separated by whitespace or commas,
    '#' starts a comment.
    """
    positions = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split('#', 1)[0]
            for token in re.split(r'[\s,]+', line.strip()):
                if not token:
                    continue
                try:
                    positions.append(int(token))
                except ValueError:
                    raise ValueError('{}:{}: {!r} is not a position'.format(path, lineno, token))
    if len(set(positions)) != len(positions):
        LOG.warning('{} lists some positions more than once'.format(path))
    return positions


def corrupt(word, model, rng, p):
    """ Corrupt a word.

    :returns: (corrupted word, sorted array of corrupted positions)
    """
    word = np.asarray(word, dtype=np.int64)
    N = word.size
    if model.kind == 'adversarial':
        positions = model.positions
        if positions.size and (positions.min() < 0 or positions.max() >= N):
            raise ValueError('pattern positions must lie in [0, {})'.format(N))
    else:
        positions = np.sort(rng.choice(N, size=model.count(N), replace=False))
    out = word.copy()
    if positions.size:
        offsets = rng.integers(1, p, size=positions.size)
        out[positions] = (out[positions] + offsets) % p
    return out, positions


def corruption_mask(N, positions):
    mask = np.zeros(N, dtype=bool)
    mask[np.asarray(positions, dtype=np.int64)] = True
    return mask
