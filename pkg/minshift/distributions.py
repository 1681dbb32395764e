# -*- coding: utf-8 -*-

"""
Parametric distribution families.

A family is a stateless object: parameters are given on every call, as a ParamVector (or any sequence) in the order
declared in families.yaml. Log-density is the primitive, pdf is derived from it.

Available families: gamma, weibull, lognormal, normal, truncnormal, exponential, gengamma, expweibull, cauchy.
Wrappers: ShiftedFamily (support moved to [c, inf)) and TruncatedFamily (base restricted to [c, inf) then moved to 0).
"""

import os

import numpy as np
import yaml
from scipy import integrate
from scipy.special import (
    gammainc,
    gammaincc,
    gammainccinv,
    gammaincinv,
    gammaln,
    log_ndtr,
    ndtr,
    ndtri,
    xlogy,
)

from .data_structs import ParamVector, Sample
from .exceptions import (
    DegenerateTruncationError,
    DivergentIntegralError,
    InvalidQuantileError,
    InvalidThetaError,
    RegistryError,
    UnknownFamilyError,
)
from .streamers import logger

REGISTRY_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "families.yaml")

HALF_LOG_2PI = 0.5 * np.log(2 * np.pi)
LN2 = np.log(2.0)

# Probability range integrated by expected_log_likelihood.
U_LOW = 1e-10
U_HIGH = 1.0 - 1e-10


def load_registry(path=REGISTRY_FILE):
    """ Read the family registry: name -> {"params", "bounds", "grid"}. """
    with open(path) as registry_file:
        return yaml.safe_load(registry_file)


def _on_support(x, inside, fct, outside):
    """ Evaluate fct on x[inside] and fill the other positions with `outside`. """
    out = np.full(x.shape, outside, dtype=float)
    if np.any(inside):
        out[inside] = fct(x[inside])
    return out


def _log1mexp(z):
    """ log(1 - exp(-z)) for z >= 0. """
    z = np.asarray(z, dtype=float)
    return np.where(z > LN2, np.log1p(-np.exp(-z)), np.log(-np.expm1(-z)))


class Family(object):
    """ A parametric family of continuous distributions.

    Subclasses implement the vectorized primitives (_log_pdf, _cdf, _sf, _ppf, _isf) on 1-d float arrays, with the
    parameters unpacked as positional arguments. _ppf only has to be accurate on [0, 0.5] and _isf on [0, 0.5):
    `quantile` routes each probability to the side where it is exactly representable.
    """

    def __init__(self, name, params, bounds, grid=()):
        self.name = name
        self.param_names = tuple(params)
        self.param_box = tuple((float(low), float(high)) for low, high in bounds)
        if len(self.param_box) != len(self.param_names):
            raise RegistryError(
                "Family {} declares {} parameters but {} bounds".format(
                    name, len(self.param_names), len(self.param_box)
                )
            )
        self.default_grid = [ParamVector(start) for start in grid]

    @property
    def param_count(self):
        return len(self.param_names)

    def is_valid(self, theta):
        """ True if theta has the right length and every coordinate lies strictly inside its bounds. """
        if len(theta) != self.param_count:
            return False
        return all(
            np.isfinite(value) and low < value < high
            for value, (low, high) in zip(theta, self.param_box)
        )

    def validate(self, theta):
        """ Returns theta as a ParamVector or raises InvalidThetaError. """
        theta = ParamVector(theta)
        if not self.is_valid(theta):
            raise InvalidThetaError(
                "Invalid parameters for {} ({}): {}".format(
                    self.name, ", ".join(self.param_names), tuple(theta)
                )
            )
        return theta

    def _evaluate(self, method, x, theta):
        theta = self.validate(theta)
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
            out = method(x, *theta)
        return float(out[0]) if scalar else out

    def log_pdf(self, x, theta):
        """ log f(x|theta); -inf where the density is 0. """
        return self._evaluate(self._log_pdf, x, theta)

    def pdf(self, x, theta):
        return np.exp(self.log_pdf(x, theta))

    def cdf(self, x, theta):
        return self._evaluate(self._cdf, x, theta)

    def sf(self, x, theta):
        """ Survival function 1 - F(x|theta). """
        return self._evaluate(self._sf, x, theta)

    def log_sf(self, x, theta):
        return self._evaluate(self._log_sf, x, theta)

    def quantile(self, q, theta):
        """ F^-1(q|theta) for q in [0, 1]. """
        self._check_probabilities(q)
        return self._evaluate(self._quantile, q, theta)

    def isf(self, p, theta):
        """ Upper-tail quantile: x such that 1 - F(x|theta) = p. """
        self._check_probabilities(p)
        return self._evaluate(self._upper_quantile, p, theta)

    def support_lower(self, theta):
        """ Lowest point of the support. """
        return float(self._support_lower(*self.validate(theta)))

    def mean(self, theta):
        """ Populational mean, nan when it does not exist. """
        theta = self.validate(theta)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
            return float(self._mean(*theta))

    def reference_scale(self, theta):
        """ Value used to normalize distances: the mean, unless the family has none. """
        return self.mean(theta)

    def rvs(self, n, theta, rng):
        """ n draws by inversion of the cdf.
        Args:
            n (int): number of draws.
            theta: parameters.
            rng (numpy.random.Generator): source of uniforms.
        """
        uniforms = rng.uniform(np.finfo(float).tiny, 1.0, size=n)
        return self._evaluate(self._quantile, uniforms, theta)

    @staticmethod
    def _check_probabilities(q):
        q = np.asarray(q, dtype=float)
        if np.any(np.isnan(q)) or np.any(q < 0) or np.any(q > 1):
            raise InvalidQuantileError("Probabilities must lie in [0, 1], got {}".format(q))

    def _quantile(self, q, *theta):
        lower = q <= 0.5
        out = np.empty(q.shape, dtype=float)
        out[lower] = self._ppf(q[lower], *theta)
        out[~lower] = self._isf(1.0 - q[~lower], *theta)
        return out

    def _upper_quantile(self, p, *theta):
        upper = p < 0.5
        out = np.empty(p.shape, dtype=float)
        out[upper] = self._isf(p[upper], *theta)
        out[~upper] = self._ppf(1.0 - p[~upper], *theta)
        return out

    def _log_sf(self, x, *theta):
        return np.log(self._sf(x, *theta))

    def _support_lower(self, *theta):
        return 0.0

    def _mean(self, *theta):
        # mean = L + integral of the survival function above the support's lower point L.
        lower = self._support_lower(*theta)
        median = self._ppf(np.array([0.5]), *theta)[0]

        def survival(x):
            return self._sf(np.array([x]), *theta)[0]

        below, _ = integrate.quad(survival, lower, median, limit=200)
        above, _ = integrate.quad(survival, median, np.inf, limit=200)
        return lower + below + above

    def _log_pdf(self, x, *theta):
        raise NotImplementedError

    def _cdf(self, x, *theta):
        raise NotImplementedError

    def _sf(self, x, *theta):
        raise NotImplementedError

    def _ppf(self, q, *theta):
        raise NotImplementedError

    def _isf(self, p, *theta):
        raise NotImplementedError

    def __repr__(self):
        return "{}({})".format(type(self).__name__, self.name)


class Gamma(Family):
    def _log_pdf(self, x, shape, scale):
        return _on_support(
            x,
            x >= 0,
            lambda t: xlogy(shape - 1, t) - t / scale - shape * np.log(scale) - gammaln(shape),
            -np.inf,
        )

    def _cdf(self, x, shape, scale):
        return gammainc(shape, np.maximum(x, 0) / scale)

    def _sf(self, x, shape, scale):
        return gammaincc(shape, np.maximum(x, 0) / scale)

    def _ppf(self, q, shape, scale):
        return scale * gammaincinv(shape, q)

    def _isf(self, p, shape, scale):
        return scale * gammainccinv(shape, p)

    def _mean(self, shape, scale):
        return shape * scale


class Weibull(Family):
    def _log_pdf(self, x, shape, scale):
        def log_density(t):
            z = t / scale
            return np.log(shape / scale) + xlogy(shape - 1, z) - z ** shape

        return _on_support(x, x >= 0, log_density, -np.inf)

    def _cdf(self, x, shape, scale):
        return -np.expm1(self._log_sf(x, shape, scale))

    def _sf(self, x, shape, scale):
        return np.exp(self._log_sf(x, shape, scale))

    def _log_sf(self, x, shape, scale):
        return -((np.maximum(x, 0) / scale) ** shape)

    def _ppf(self, q, shape, scale):
        return scale * (-np.log1p(-q)) ** (1.0 / shape)

    def _isf(self, p, shape, scale):
        return scale * (-np.log(p)) ** (1.0 / shape)

    def _mean(self, shape, scale):
        return scale * np.exp(gammaln(1.0 + 1.0 / shape))


class Lognormal(Family):
    def _log_pdf(self, x, mu, sigma):
        def log_density(t):
            log_t = np.log(t)
            return -log_t - np.log(sigma) - HALF_LOG_2PI - 0.5 * ((log_t - mu) / sigma) ** 2

        return _on_support(x, x > 0, log_density, -np.inf)

    def _cdf(self, x, mu, sigma):
        return _on_support(x, x > 0, lambda t: ndtr((np.log(t) - mu) / sigma), 0.0)

    def _sf(self, x, mu, sigma):
        return _on_support(x, x > 0, lambda t: ndtr((mu - np.log(t)) / sigma), 1.0)

    def _log_sf(self, x, mu, sigma):
        return _on_support(x, x > 0, lambda t: log_ndtr((mu - np.log(t)) / sigma), 0.0)

    def _ppf(self, q, mu, sigma):
        return np.exp(mu + sigma * ndtri(q))

    def _isf(self, p, mu, sigma):
        return np.exp(mu - sigma * ndtri(p))

    def _mean(self, mu, sigma):
        return np.exp(mu + 0.5 * sigma ** 2)


class Normal(Family):
    def _log_pdf(self, x, mu, sigma):
        return -np.log(sigma) - HALF_LOG_2PI - 0.5 * ((x - mu) / sigma) ** 2

    def _cdf(self, x, mu, sigma):
        return ndtr((x - mu) / sigma)

    def _sf(self, x, mu, sigma):
        return ndtr((mu - x) / sigma)

    def _log_sf(self, x, mu, sigma):
        return log_ndtr((mu - x) / sigma)

    def _ppf(self, q, mu, sigma):
        return mu + sigma * ndtri(q)

    def _isf(self, p, mu, sigma):
        return mu - sigma * ndtri(p)

    def _support_lower(self, mu, sigma):
        return -np.inf

    def _mean(self, mu, sigma):
        return mu


class TruncNormal(Family):
    """ Normal distribution truncated at 0, parametrized by the parent's mu and sigma. """

    def _log_pdf(self, x, mu, sigma):
        log_mass = log_ndtr(mu / sigma)
        return _on_support(
            x,
            x >= 0,
            lambda t: -np.log(sigma) - HALF_LOG_2PI - 0.5 * ((t - mu) / sigma) ** 2 - log_mass,
            -np.inf,
        )

    def _cdf(self, x, mu, sigma):
        lower = -mu / sigma
        mass = ndtr(mu / sigma)

        def cdf(t):
            z = (t - mu) / sigma
            if lower > 0:
                # both tails are small there, subtracting survival values keeps the precision
                return (mass - ndtr(-z)) / mass
            return (ndtr(z) - ndtr(lower)) / mass

        return _on_support(x, x >= 0, cdf, 0.0)

    def _sf(self, x, mu, sigma):
        return np.exp(self._log_sf(x, mu, sigma))

    def _log_sf(self, x, mu, sigma):
        log_mass = log_ndtr(mu / sigma)
        return _on_support(x, x >= 0, lambda t: log_ndtr((mu - t) / sigma) - log_mass, 0.0)

    def _ppf(self, q, mu, sigma):
        mass = ndtr(mu / sigma)
        if mu < 0:
            x = mu - sigma * ndtri((1.0 - q) * mass)
        else:
            x = mu + sigma * ndtri(ndtr(-mu / sigma) + q * mass)
        return np.maximum(x, 0.0)

    def _isf(self, p, mu, sigma):
        return np.maximum(mu - sigma * ndtri(p * ndtr(mu / sigma)), 0.0)

    def _mean(self, mu, sigma):
        lower = -mu / sigma
        return mu + sigma * np.exp(-0.5 * lower ** 2 - HALF_LOG_2PI - log_ndtr(mu / sigma))


class Exponential(Family):
    def _log_pdf(self, x, rate):
        return _on_support(x, x >= 0, lambda t: np.log(rate) - rate * t, -np.inf)

    def _cdf(self, x, rate):
        return -np.expm1(-rate * np.maximum(x, 0))

    def _sf(self, x, rate):
        return np.exp(self._log_sf(x, rate))

    def _log_sf(self, x, rate):
        return -rate * np.maximum(x, 0)

    def _ppf(self, q, rate):
        return -np.log1p(-q) / rate

    def _isf(self, p, rate):
        return -np.log(p) / rate

    def _mean(self, rate):
        return 1.0 / rate


class GenGamma(Family):
    """ Generalized gamma, Stacy parametrization:
        f(x) = p / scale^d * x^(d-1) * exp(-(x/scale)^p) / Gamma(d/p)
    """

    def _log_pdf(self, x, scale, d, p):
        def log_density(t):
            return (
                np.log(p)
                - d * np.log(scale)
                + xlogy(d - 1, t)
                - (t / scale) ** p
                - gammaln(d / p)
            )

        return _on_support(x, x >= 0, log_density, -np.inf)

    def _cdf(self, x, scale, d, p):
        return gammainc(d / p, (np.maximum(x, 0) / scale) ** p)

    def _sf(self, x, scale, d, p):
        return gammaincc(d / p, (np.maximum(x, 0) / scale) ** p)

    def _ppf(self, q, scale, d, p):
        return scale * gammaincinv(d / p, q) ** (1.0 / p)

    def _isf(self, prob, scale, d, p):
        return scale * gammainccinv(d / p, prob) ** (1.0 / p)

    def _mean(self, scale, d, p):
        return scale * np.exp(gammaln((d + 1) / p) - gammaln(d / p))


class ExpWeibull(Family):
    """ Exponentiated Weibull: F(x) = (1 - exp(-(x/scale)^shape))^alpha. """

    def _log_pdf(self, x, shape, scale, alpha):
        def log_density(t):
            z0 = t / scale
            z = z0 ** shape
            return (
                np.log(alpha * shape / scale)
                + xlogy(shape - 1, z0)
                - z
                + (alpha - 1) * _log1mexp(z)
            )

        out = _on_support(x, x > 0, log_density, -np.inf)
        # near 0 the density behaves like x^(shape * alpha - 1)
        power = shape * alpha - 1
        if power < 0:
            at_origin = np.inf
        elif power > 0:
            at_origin = -np.inf
        else:
            at_origin = np.log(alpha * shape / scale)
        out[x == 0] = at_origin
        return out

    def _log_cdf(self, x, shape, scale, alpha):
        return _on_support(
            x, x > 0, lambda t: alpha * _log1mexp((t / scale) ** shape), -np.inf
        )

    def _cdf(self, x, shape, scale, alpha):
        return np.exp(self._log_cdf(x, shape, scale, alpha))

    def _sf(self, x, shape, scale, alpha):
        return -np.expm1(self._log_cdf(x, shape, scale, alpha))

    def _ppf(self, q, shape, scale, alpha):
        # q^(1/alpha) = exp(-t), t >= 0; z = -log(1 - exp(-t))
        z = -_log1mexp(-np.log(q) / alpha)
        return scale * z ** (1.0 / shape)

    def _isf(self, p, shape, scale, alpha):
        z = -_log1mexp(-np.log1p(-p) / alpha)
        return scale * z ** (1.0 / shape)


class Cauchy(Family):
    def _log_pdf(self, x, loc, scale):
        return -np.log(np.pi * scale) - np.log1p(((x - loc) / scale) ** 2)

    def _cdf(self, x, loc, scale):
        return np.arctan2(1.0, (loc - x) / scale) / np.pi

    def _sf(self, x, loc, scale):
        return np.arctan2(1.0, (x - loc) / scale) / np.pi

    def _ppf(self, q, loc, scale):
        return loc - scale / np.tan(np.pi * q)

    def _isf(self, p, loc, scale):
        return loc + scale / np.tan(np.pi * p)

    def _support_lower(self, loc, scale):
        return -np.inf

    def _mean(self, loc, scale):
        return np.nan

    def reference_scale(self, theta):
        """ The Cauchy has no mean: distances are normalized by its scale. """
        return self.validate(theta)[1]


class ShiftedFamily(Family):
    """ base moved to the right by c: f(y|theta, c) = f_base(y - c|theta). """

    def __init__(self, base, c):
        super(ShiftedFamily, self).__init__(
            "{}+{!r}".format(base.name, float(c)),
            base.param_names,
            base.param_box,
            base.default_grid,
        )
        self.base = base
        self.c = float(c)

    def _log_pdf(self, x, *theta):
        return self.base._log_pdf(x - self.c, *theta)

    def _cdf(self, x, *theta):
        return self.base._cdf(x - self.c, *theta)

    def _sf(self, x, *theta):
        return self.base._sf(x - self.c, *theta)

    def _log_sf(self, x, *theta):
        return self.base._log_sf(x - self.c, *theta)

    def _ppf(self, q, *theta):
        return self.base._ppf(q, *theta) + self.c

    def _isf(self, p, *theta):
        return self.base._isf(p, *theta) + self.c

    def _support_lower(self, *theta):
        return self.base._support_lower(*theta) + self.c

    def _mean(self, *theta):
        return self.base._mean(*theta) + self.c

    def reference_scale(self, theta):
        return self.base.reference_scale(theta)


class TruncatedFamily(Family):
    """ base restricted to [c, inf), renormalized and moved back to the origin:
        f(y|theta) = f_base(y + c|theta) / (1 - F_base(c|theta)) for y >= 0.
    """

    def __init__(self, base, c):
        super(TruncatedFamily, self).__init__(
            "{}|>{!r}".format(base.name, float(c)),
            base.param_names,
            base.param_box,
            base.default_grid,
        )
        self.base = base
        self.c = float(c)

    def log_lambda(self, theta):
        """ log of the renormalization constant 1 / (1 - F_base(c|theta)). """
        theta = self.validate(theta)
        with np.errstate(divide="ignore", under="ignore"):
            log_sf_c = self._log_sf_c(*theta)
        if log_sf_c == -np.inf:
            raise DegenerateTruncationError(
                "1 - F(c) underflows to 0 for {} at c={!r}, theta={}".format(
                    self.base.name, self.c, tuple(theta)
                )
            )
        return -log_sf_c

    def _log_sf_c(self, *theta):
        return self.base._log_sf(np.array([self.c]), *theta)[0]

    def _log_pdf(self, x, *theta):
        log_sf_c = self._log_sf_c(*theta)
        if log_sf_c == -np.inf:
            return np.full(x.shape, -np.inf)
        return _on_support(
            x, x >= 0, lambda t: self.base._log_pdf(t + self.c, *theta) - log_sf_c, -np.inf
        )

    def _log_sf(self, x, *theta):
        log_sf_c = self._log_sf_c(*theta)
        return _on_support(
            x, x >= 0, lambda t: self.base._log_sf(t + self.c, *theta) - log_sf_c, 0.0
        )

    def _cdf(self, x, *theta):
        return -np.expm1(self._log_sf(x, *theta))

    def _sf(self, x, *theta):
        return np.exp(self._log_sf(x, *theta))

    def _ppf(self, q, *theta):
        sf_c = np.exp(self._log_sf_c(*theta))
        return np.maximum(self.base._upper_quantile((1.0 - q) * sf_c, *theta) - self.c, 0.0)

    def _isf(self, p, *theta):
        sf_c = np.exp(self._log_sf_c(*theta))
        return np.maximum(self.base._upper_quantile(p * sf_c, *theta) - self.c, 0.0)


FAMILY_CLASSES = {
    "gamma": Gamma,
    "weibull": Weibull,
    "lognormal": Lognormal,
    "normal": Normal,
    "truncnormal": TruncNormal,
    "exponential": Exponential,
    "gengamma": GenGamma,
    "expweibull": ExpWeibull,
    "cauchy": Cauchy,
}


def _build_families(registry):
    missing = set(FAMILY_CLASSES) ^ set(registry)
    if missing:
        raise UnknownFamilyError(
            "Registry and implementations disagree on: {}".format(", ".join(sorted(missing)))
        )
    return {
        name: FAMILY_CLASSES[name](name, **registry[name]) for name in sorted(registry)
    }


FAMILIES = _build_families(load_registry())


def get_family(name):
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamilyError(
            "Unknown family {!r}. Available: {}".format(name, ", ".join(sorted(FAMILIES)))
        )


def eval_log_pdf(family, theta, x):
    """ log f(x|theta), -inf where the density vanishes. """
    return float(family.log_pdf(float(x), theta))


def log_likelihood(family, theta, values):
    """ Sum of the log-densities of `values` (a Sample or an array). """
    if isinstance(values, Sample):
        values = values.values
    return float(np.sum(family.log_pdf(np.asarray(values, dtype=float), theta)))


def sample(family, theta, n, seed):
    """ n iid draws from family(theta). Identical arguments give identical samples. """
    if n < 1:
        raise ValueError("n must be positive, got {}".format(n))
    return Sample(family.rvs(int(n), theta, np.random.default_rng(seed)))


def truncate_family(base, c):
    """ See TruncatedFamily. The log-likelihood of y = x - c under the result is the base log-likelihood of x plus
    n * log_lambda(theta). """
    return TruncatedFamily(base, c)


def expected_log_likelihood(candidate, theta2, truth, theta1, strict=False):
    """ Integral of log f_candidate(x|theta2) dF_truth(x|theta1).

    The integral is done in probability space, x = F_truth^-1(u), over [U_LOW, U_HIGH].
    Returns -inf (or raises DivergentIntegralError if strict) when the candidate density vanishes on a set the truth
    gives positive probability to.
    """
    theta1 = truth.validate(theta1)
    theta2 = candidate.validate(theta2)
    lower = candidate.support_lower(theta2)
    if np.isfinite(lower) and truth.cdf(lower, theta1) > 0:
        msg = "candidate {} vanishes below {!r} where {} has probability {!r}".format(
            candidate.name, lower, truth.name, truth.cdf(lower, theta1)
        )
        if strict:
            raise DivergentIntegralError(msg)
        logger.warning("Divergent expected log-likelihood: %s", msg)
        return -np.inf

    def integrand(u):
        return candidate.log_pdf(truth.quantile(u, theta1), theta2)

    value = 0.0
    for low, high in ((U_LOW, 0.5), (0.5, U_HIGH)):
        part, _ = integrate.quad(integrand, low, high, epsabs=1e-8, epsrel=1e-10, limit=200)
        value += part
    if np.isnan(value):
        return -np.inf
    return value
