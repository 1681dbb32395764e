# -*- coding: utf-8 -*-

"""
Distribution of the minimum of n iid draws: F_min(x) = 1 - (1 - F(x))^n.

(1 - F)^n is always evaluated as exp(n * log_sf): with F(x) ~ 1e-7 and n ~ 1e6 the naive power is pure rounding noise.
"""

from collections import namedtuple

import numpy as np

from .exceptions import InvalidNormalizerError, InvalidQuantileError

DistanceReport = namedtuple(
    "DistanceReport",
    ["F_at_c", "rel_dist_to_min", "signed_rel_dist_q05", "signed_rel_dist_q01"],
)


class MinDistribution(object):
    """ Minimum of n draws of family(theta). """

    def __init__(self, base, theta, n):
        if int(n) != n or n < 1:
            raise ValueError("n must be a positive integer, got {!r}".format(n))
        self.base = base
        self.theta = base.validate(theta)
        self.n = int(n)

    def cdf(self, x):
        if self.n == 1:
            return self.base.cdf(x, self.theta)
        return -np.expm1(self.n * self.base.log_sf(x, self.theta))

    def quantile(self, q):
        if not 0 < q < 1:
            raise InvalidQuantileError("q must lie in (0, 1), got {!r}".format(q))
        if self.n == 1:
            return self.base.quantile(q, self.theta)
        # the base is evaluated at 1 - (1 - q)^(1/n), kept on whichever side of 0.5 it is exact
        log_upper = np.log1p(-q) / self.n
        lower = -np.expm1(log_upper)
        if lower <= 0.5:
            return self.base.quantile(lower, self.theta)
        return self.base.isf(np.exp(log_upper), self.theta)

    def __repr__(self):
        return "MinDistribution({}, {!r}, n={})".format(self.base.name, self.theta, self.n)


def min_cdf(md, x):
    """ P(min of n draws <= x). """
    return md.cdf(x)


def min_quantile(md, q):
    """ Value below which the sample minimum falls with probability q. """
    return md.quantile(q)


def baseline_q01(family, theta, n):
    """ 1% quantile of the sample minimum: the reference an ideal shift should reach. """
    return min_quantile(MinDistribution(family, theta, n), 0.01)


def baseline_q05(family, theta, n):
    return min_quantile(MinDistribution(family, theta, n), 0.05)


def distance_report(c_hat, family, theta, n, sample_min, pop_mean=None):
    """ How far an estimate c_hat lands from the sample minimum and from the low quantiles of the minimum.

    Distances are divided by pop_mean (defaults to family.reference_scale(theta), the mean or, for the Cauchy, the
    scale). Signed distances are negative when c_hat lies below the quantile.
    """
    theta = family.validate(theta)
    if pop_mean is None:
        pop_mean = family.reference_scale(theta)
    if not np.isfinite(pop_mean) or pop_mean == 0:
        raise InvalidNormalizerError(
            "Cannot normalize distances by {!r} for {} at {}".format(pop_mean, family.name, tuple(theta))
        )
    md = MinDistribution(family, theta, n)
    return DistanceReport(
        F_at_c=float(family.cdf(c_hat, theta)),
        rel_dist_to_min=float((sample_min - c_hat) / pop_mean),
        signed_rel_dist_q05=float((c_hat - md.quantile(0.05)) / pop_mean),
        signed_rel_dist_q01=float((c_hat - md.quantile(0.01)) / pop_mean),
    )
