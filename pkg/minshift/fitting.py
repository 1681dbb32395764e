# -*- coding: utf-8 -*-

"""
Maximum likelihood fits of a family on a sample, under one of the ways of handling the unknown minimum:

    * baseline:             fit the raw sample.
    * shift-c1 .. shift-c4: subtract a closed-form estimate (see estimators) once, fit the shifted sample.
    * infer-c:              the shift c is an extra parameter, constrained to [c_lower_bound, sample min).
    * iterated:             at every evaluation the sample is shifted by the median_q quantile of the sample minimum
                            under the current parameters.

The objective is the negative log-likelihood with a +inf penalty outside the admissible region. Every start of the
grid runs scipy's Nelder-Mead (adaptive coefficients); the best converged start wins.
"""

import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np
from scipy import optimize

from .data_structs import ParamVector
from .distributions import log_likelihood
from .estimators import EstimatorConfig, estimate
from .exceptions import (
    DivergedFitError,
    InsufficientSampleError,
    InvalidMethodError,
)
from .order_stats import MinDistribution
from .streamers import InfoStreamer

BASELINE = "baseline"
SHIFT_C1 = "shift-c1"
SHIFT_C2 = "shift-c2"
SHIFT_C3 = "shift-c3"
SHIFT_C4 = "shift-c4"
INFER_C = "infer-c"
ITERATED = "iterated"

KINDS = (BASELINE, SHIFT_C1, SHIFT_C2, SHIFT_C3, SHIFT_C4, INFER_C, ITERATED)
SHIFT_ESTIMATORS = {SHIFT_C1: "c1", SHIFT_C2: "c2", SHIFT_C3: "c3", SHIFT_C4: "c4"}

SIMPLEX = "simplex"

# relative step used to detect an optimum sitting on the penalty boundary
BOUNDARY_STEP = 1e-6


@dataclass(frozen=True)
class ShiftMethod(object):
    kind: str = BASELINE
    estimator_cfg: EstimatorConfig = field(default_factory=EstimatorConfig)
    c_lower_bound: float = 0.0
    median_q: float = 0.5

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidMethodError(
                "Unknown method {!r}. Available: {}".format(self.kind, ", ".join(KINDS))
            )
        if not 0 < self.median_q < 1:
            raise InvalidMethodError("median_q must lie in (0, 1), got {!r}".format(self.median_q))
        if np.isnan(self.c_lower_bound) or self.c_lower_bound == np.inf:
            raise InvalidMethodError("Invalid c_lower_bound {!r}".format(self.c_lower_bound))

    @property
    def extra_params(self):
        """ Parameters fitted on top of the family's own. """
        return 1 if self.kind == INFER_C else 0


@dataclass(frozen=True)
class FitConfig(object):
    """
    Attributes:
        grid: optimizer starts. None means the family's default grid.
        max_iters: Nelder-Mead iteration cap per start.
        rel_tol: convergence tolerance, relative to the magnitude of the start and of its objective.
        optimizer: only "simplex".
        jitter: relative noise applied to the initial simplex (drawn from the fit seed). 0 keeps fits seed-free.
    """

    grid: Optional[List[ParamVector]] = None
    max_iters: int = 2000
    rel_tol: float = 1e-8
    optimizer: str = SIMPLEX
    jitter: float = 0.0

    def __post_init__(self):
        if self.grid is not None:
            if not self.grid:
                raise InvalidMethodError("The grid of starts is empty")
            object.__setattr__(self, "grid", [ParamVector(start) for start in self.grid])
        if self.max_iters < 1 or not self.rel_tol > 0 or self.jitter < 0:
            raise InvalidMethodError(
                "max_iters and rel_tol must be positive and jitter non-negative: {!r}, {!r}, {!r}".format(
                    self.max_iters, self.rel_tol, self.jitter
                )
            )
        if self.optimizer != SIMPLEX:
            raise InvalidMethodError(
                "Unknown optimizer {!r}. Available: {}".format(self.optimizer, SIMPLEX)
            )

    def starts(self, family):
        return self.grid if self.grid is not None else family.default_grid


@dataclass(frozen=True)
class FitResult(object):
    family: str
    method: str
    theta_hat: ParamVector
    c_hat: float
    loglik: float
    aic: float
    converged: bool
    n_evals: int
    n_params: int
    wall_time: float = 0.0

    def to_dict(self, with_wall_time=True):
        result = asdict(self)
        result["theta_hat"] = list(self.theta_hat)
        if not with_wall_time:
            del result["wall_time"]
        return result


def aic_value(n_params, loglik):
    return 2.0 * n_params - 2.0 * loglik


def aic(result):
    """ 2k - 2 loglik. Raises DivergedFitError on a diverged fit. """
    if not result.converged:
        raise DivergedFitError(
            "No AIC for the diverged fit {}/{}".format(result.family, result.method)
        )
    return aic_value(result.n_params, result.loglik)


class Objective(object):
    """ Negative log-likelihood of a (method, family, sample), as a function of a flat vector.

    The vector is theta, extended with c for infer-c. Outside the admissible region the value is +inf.
    n_evals counts calls.
    """

    def __init__(self, method, family, sample):
        if sample.n < family.param_count + 2:
            raise InsufficientSampleError(
                "Fitting {} needs at least {} observations, got {}".format(
                    family.name, family.param_count + 2, sample.n
                )
            )
        self.method = method
        self.family = family
        self.sample = sample
        self.n_evals = 0
        self.fixed_shift = None
        self._shifted_values = None
        if method.kind == BASELINE:
            self.fixed_shift = 0.0
        elif method.kind in SHIFT_ESTIMATORS:
            self.fixed_shift = estimate(
                SHIFT_ESTIMATORS[method.kind], sample, method.estimator_cfg
            )
        if self.fixed_shift is not None:
            self._shifted_values = sample.values - self.fixed_shift

    @property
    def dimension(self):
        return self.family.param_count + self.method.extra_params

    def shift(self, x):
        """ Shift applied to the sample at point x, None where it is undefined. """
        if self.fixed_shift is not None:
            return self.fixed_shift
        theta = x[: self.family.param_count]
        if self.method.kind == INFER_C:
            return float(x[-1])
        if not self.family.is_valid(theta):
            return None
        md = MinDistribution(self.family, theta, self.sample.n)
        return float(md.quantile(self.method.median_q))

    def __call__(self, x):
        self.n_evals += 1
        theta = x[: self.family.param_count]
        if not self.family.is_valid(theta):
            return np.inf
        if self._shifted_values is not None:
            values = self._shifted_values
        else:
            c = self.shift(x)
            if c is None or not np.isfinite(c) or c >= self.sample.min:
                return np.inf
            if self.method.kind == INFER_C and c < self.method.c_lower_bound:
                return np.inf
            values = self.sample.values - c
        loglik = log_likelihood(self.family, theta, values)
        if not np.isfinite(loglik):
            return np.inf
        return -loglik


def build_objective(method, family, sample):
    return Objective(method, family, sample)


def initial_points(method, family, sample, cfg):
    """ The grid starts, extended with c0 = min - sd / n for infer-c. """
    starts = [np.asarray(start, dtype=float) for start in cfg.starts(family)]
    for start in starts:
        if start.size != family.param_count:
            raise InvalidMethodError(
                "Start {} does not match the {} parameters of {}".format(
                    tuple(start), family.param_count, family.name
                )
            )
    if method.kind != INFER_C:
        return starts
    if method.c_lower_bound >= sample.min:
        raise InvalidMethodError(
            "c_lower_bound {!r} must lie below the sample minimum {!r}".format(
                method.c_lower_bound, sample.min
            )
        )
    c0 = sample.min - sample.sd / sample.n
    if c0 < method.c_lower_bound:
        c0 = method.c_lower_bound + 0.5 * (sample.min - method.c_lower_bound)
    return [np.append(start, c0) for start in starts]


def _initial_simplex(x0, jitter, rng):
    # scipy's default construction: +5% on each coordinate, 0.00025 for zeros
    simplex = np.tile(x0, (x0.size + 1, 1))
    for i in range(x0.size):
        simplex[i + 1, i] = 1.05 * x0[i] if x0[i] != 0 else 0.00025
    return simplex * (1.0 + jitter * rng.standard_normal(simplex.shape))


def _on_boundary(objective, x):
    for i in range(x.size):
        step = BOUNDARY_STEP * max(abs(x[i]), 1.0)
        for sign in (-1.0, 1.0):
            nudged = x.copy()
            nudged[i] += sign * step
            if not np.isfinite(objective(nudged)):
                return True
    return False


def _run_start(objective, x0, cfg, rng):
    """ One Nelder-Mead run. Returns (x, fun, nfev, converged). """
    f0 = objective(x0)
    scale = max(1.0, float(np.max(np.abs(x0))))
    options = {
        "maxiter": cfg.max_iters,
        "xatol": cfg.rel_tol * scale,
        "fatol": cfg.rel_tol * (max(1.0, abs(f0)) if np.isfinite(f0) else 1.0),
        "adaptive": True,
    }
    if cfg.jitter > 0:
        options["initial_simplex"] = _initial_simplex(x0, cfg.jitter, rng)
    with np.errstate(all="ignore"):
        res = optimize.minimize(objective, x0, method="Nelder-Mead", options=options)
    x = np.asarray(res.x, dtype=float)
    fun = float(res.fun)
    converged = bool(res.success) and np.isfinite(fun) and not _on_boundary(objective, x)
    return x, fun, int(res.nfev), converged


def fit(method, family, sample, cfg=None, seed=0, info_streamer=None):
    """ Fit family on sample under method.

    Divergence is a result state: when no start converges the result has converged=False and aic=+inf.
    Args:
        method (ShiftMethod)
        family (distributions.Family)
        sample (data_structs.Sample)
        cfg (FitConfig): defaults to FitConfig().
        seed (int): only used to jitter the initial simplexes (cfg.jitter > 0).
        info_streamer (InfoStreamer): receives begin/end events.
    Returns:
        FitResult
    """
    cfg = cfg or FitConfig()
    info_streamer = info_streamer or InfoStreamer()
    fit_name = "{}/{}".format(family.name, method.kind)
    info_streamer.send_info(fit_name=fit_name, begin=True)
    began = time.perf_counter()

    objective = build_objective(method, family, sample)
    starts = initial_points(method, family, sample, cfg)
    rng = np.random.default_rng(seed)
    outcomes = [_run_start(objective, x0, cfg, rng) for x0 in starts]

    converged = [outcome for outcome in outcomes if outcome[3]]
    if converged:
        # sorted() is stable: remaining ties keep the grid order
        best_x, best_fun = sorted(converged, key=lambda outcome: (outcome[1], outcome[2]))[0][:2]
    else:
        finite = [outcome for outcome in outcomes if np.isfinite(outcome[1])]
        if finite:
            best_x, best_fun = sorted(finite, key=lambda outcome: outcome[1])[0][:2]
        else:
            best_x, best_fun = starts[0], np.inf

    n_params = family.param_count + method.extra_params
    shift = objective.shift(best_x)
    loglik = -best_fun if np.isfinite(best_fun) else -np.inf
    result = FitResult(
        family=family.name,
        method=method.kind,
        theta_hat=ParamVector(best_x[: family.param_count]),
        c_hat=float(shift) if shift is not None else np.nan,
        loglik=float(loglik),
        aic=aic_value(n_params, loglik) if converged else np.inf,
        converged=bool(converged),
        n_evals=objective.n_evals,
        n_params=n_params,
        wall_time=time.perf_counter() - began,
    )
    info_streamer.send_info(
        fit_name=fit_name,
        end=True,
        diverged=not result.converged,
        loglik=result.loglik,
        n_evals=result.n_evals,
    )
    return result
