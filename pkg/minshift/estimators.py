# -*- coding: utf-8 -*-

"""
Closed-form estimators of a low quantile of the underlying variable, built from the sample minimum m, mean mu and
standard deviation sd (Bessel-corrected):

    * c1: m * (1 - sd / (mu * log_k(n)))          multiplicative, positive variables only
    * c2: m - sd / n
    * c3: m - sd * sqrt(ln ln n / (2n))           law of the iterated logarithm
    * c4: m - sd * sqrt(-ln(nu / 2) / (2n))       Dvoretzky-Kiefer-Wolfowitz inequality

All of them land at or below the sample minimum. c1 may be negative: it is returned as is, with a
NegativeEstimateWarning.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    InsufficientSampleError,
    InvalidLogBaseError,
    InvalidNuError,
    NegativeEstimateWarning,
    RequiresPositiveSupportError,
)
from .streamers import logger

ITERATED_LOG = "iterated-log"
DKW = "dkw"


@dataclass(frozen=True)
class EstimatorConfig(object):
    """
    Attributes:
        k (float): base of the logarithm in c1.
        nu (float): tail probability of the DKW band in c4.
    """

    k: float = 10.0
    nu: float = 0.05

    def __post_init__(self):
        if not self.k > 1:
            raise InvalidLogBaseError("k must be greater than 1, got {!r}".format(self.k))
        _check_nu(self.nu)


def _check_nu(nu):
    if not 0 < nu < 1:
        raise InvalidNuError("nu must lie in (0, 1), got {!r}".format(nu))


def _require_n(sample, minimum, name):
    if sample.n < minimum:
        raise InsufficientSampleError(
            "{} needs at least {} observations, got {}".format(name, minimum, sample.n)
        )


def ecdf_deviation_bound(n, kind, nu=0.05):
    """ Deviation bound of the empirical cdf: sqrt(ln ln n / 2n) (iterated-log) or sqrt(-ln(nu/2) / 2n) (dkw). """
    if kind == ITERATED_LOG:
        if n < 3:
            raise InsufficientSampleError(
                "The iterated-log bound needs n >= 3 (ln ln n < 0 below), got {}".format(n)
            )
        return float(np.sqrt(np.log(np.log(n)) / (2.0 * n)))
    if kind == DKW:
        if n < 1:
            raise InsufficientSampleError("The dkw bound needs n >= 1, got {}".format(n))
        _check_nu(nu)
        return float(np.sqrt(-np.log(nu / 2.0) / (2.0 * n)))
    raise ValueError(
        "Unknown bound {!r}. Available: {}, {}".format(kind, ITERATED_LOG, DKW)
    )


def c1(sample, cfg=EstimatorConfig()):
    """ Moves the minimum towards the origin by the coefficient of variation over log_k(n). """
    _require_n(sample, 2, "c1")
    if sample.sd == 0:
        raise InsufficientSampleError("c1 is undefined for a constant sample")
    if sample.min <= 0:
        raise RequiresPositiveSupportError(
            "c1 is multiplicative, it needs a positive sample minimum (got {!r})".format(sample.min)
        )
    log_n = np.log(sample.n) / np.log(cfg.k)
    estimate = float(sample.min * (1.0 - sample.sd / (sample.mean * log_n)))
    if estimate < 0:
        logger.warning("c1 estimate is negative: %r (sample %r)", estimate, sample)
        warnings.warn(
            "c1 estimate {!r} is negative".format(estimate), NegativeEstimateWarning
        )
    return estimate


def c2(sample):
    _require_n(sample, 2, "c2")
    return float(sample.min - sample.sd / sample.n)


def c3(sample):
    _require_n(sample, 3, "c3")
    return float(sample.min - sample.sd * ecdf_deviation_bound(sample.n, ITERATED_LOG))


def c4(sample, cfg=EstimatorConfig()):
    _require_n(sample, 2, "c4")
    return float(sample.min - sample.sd * ecdf_deviation_bound(sample.n, DKW, cfg.nu))


ESTIMATORS = {
    "c1": c1,
    "c2": lambda sample, cfg=None: c2(sample),
    "c3": lambda sample, cfg=None: c3(sample),
    "c4": c4,
}


def estimate(name, sample, cfg=EstimatorConfig()):
    """ Run the estimator called `name` ("c1" .. "c4"). """
    try:
        estimator = ESTIMATORS[name]
    except KeyError:
        raise ValueError(
            "Unknown estimator {!r}. Available: {}".format(name, ", ".join(sorted(ESTIMATORS)))
        )
    return estimator(sample, cfg)


def estimate_all(sample, cfg=EstimatorConfig()):
    """ Every estimator that applies to the sample, plus the statistics they use.
    Returns:
        dict: keys min, mean, sd, n, c1..c4. An estimator that does not apply is reported as None.
    """
    report = {"n": sample.n, "min": sample.min, "mean": sample.mean, "sd": sample.sd}
    for name in sorted(ESTIMATORS):
        try:
            report[name] = estimate(name, sample, cfg)
        except (InsufficientSampleError, RequiresPositiveSupportError) as exc:
            logger.info("%s not applicable: %s", name, exc)
            report[name] = None
    return report
