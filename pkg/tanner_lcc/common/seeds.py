""" Seed substreams.

All randomness hangs off a single root seed. A substream is addressed by a
stream id and a tuple of counters, e.g. (SUCCESS_TRIAL, grid_index, trial)
and built as ``SeedSequence(root, spawn_key=(stream, *counters))``. The
address of a trial never depends on scheduling, so the thread count does
not change any result.
"""
import numpy as np

GRAPH = 0
CODEWORD = 1
CORRUPT = 2
CORRECT = 3
SUCCESS_TRIAL = 4
WALK = 5
AUDIT = 6
EQUIVARIANCE = 7
PROPOSITION = 8

STREAMS = {
    'graph': GRAPH,
    'codeword': CODEWORD,
    'corrupt': CORRUPT,
    'correct': CORRECT,
    'success_trial': SUCCESS_TRIAL,
    'walk': WALK,
    'audit': AUDIT,
    'equivariance': EQUIVARIANCE,
    'proposition': PROPOSITION,
}


def substream(root, stream, *counters):
    """ numpy Generator for the given stream address.
    """
    key = (int(stream),) + tuple(int(c) for c in counters)
    return np.random.default_rng(np.random.SeedSequence(int(root), spawn_key=key))
