""" Bernoulli KL divergence and binomial intervals
"""
import math

from scipy import stats


def kl(gamma, delta):
    """ D(gamma || delta) between Bernoulli distributions, in nats.

    :raises ValueError: unless both arguments lie strictly between 0 and 1
    """
    for name, x in (('gamma', gamma), ('delta', delta)):
        if not 0.0 < x < 1.0:
            raise ValueError('{} must lie in (0, 1), got {}'.format(name, x))
    return gamma * math.log(gamma / delta) + (1.0 - gamma) * math.log((1.0 - gamma) / (1.0 - delta))


def walk_tail_bound(gamma, rho, lam, length):
    """ exp(-L D(gamma || rho + 2 lambda)), or 1 when rho + 2 lambda >= gamma.

    :returns: (bound, hypothesis_holds)
    """
    delta = rho + 2.0 * lam
    if delta >= gamma or delta <= 0.0:
        return (0.0 if delta <= 0.0 else 1.0), delta < gamma
    return math.exp(-length * kl(gamma, delta)), True


def wilson(successes, trials, confidence=0.95):
    """ Wilson score interval for a binomial proportion.

    :returns: (low, high)
    """
    if trials == 0:
        return 0.0, 1.0
    z = stats.norm.ppf(0.5 + confidence / 2.0)
    phat = successes / float(trials)
    denom = 1.0 + z * z / trials
    centre = (phat + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4.0 * trials * trials)) / denom
    low = 0.0 if successes == 0 else max(0.0, centre - half)
    high = 1.0 if successes == trials else min(1.0, centre + half)
    return low, high


def standard_error(fraction, trials):
    return math.sqrt(max(fraction * (1.0 - fraction), 0.0) / trials) if trials else 0.0
