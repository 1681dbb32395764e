# -*- coding: utf-8 -*-

import numpy as np
import pytest
from scipy import stats

from minshift import distributions
from minshift.distributions import (
    FAMILIES,
    Family,
    ShiftedFamily,
    TruncatedFamily,
    eval_log_pdf,
    expected_log_likelihood,
    get_family,
    load_registry,
    log_likelihood,
    truncate_family,
)
from minshift.exceptions import (
    DegenerateTruncationError,
    DivergentIntegralError,
    InvalidQuantileError,
    InvalidThetaError,
    RegistryError,
    UnknownFamilyError,
)
from minshift.family_test_suite import FamilyTestSuite

POSITIVE_FAMILIES = ["gamma", "weibull", "lognormal", "truncnormal", "exponential", "gengamma", "expweibull"]


class TestGamma(FamilyTestSuite):
    family_name = "gamma"
    thetas = [(0.5, 1.0), (2.0, 1.0), (10.0, 3.0)]


class TestWeibull(FamilyTestSuite):
    family_name = "weibull"
    thetas = [(0.7, 2.0), (2.0, 1.0), (10.0, 80.0)]


class TestLognormal(FamilyTestSuite):
    family_name = "lognormal"
    thetas = [(0.0, 0.5), (1.0, 1.0), (-1.0, 0.25)]


class TestNormal(FamilyTestSuite):
    family_name = "normal"
    thetas = [(0.0, 1.0), (10.0, 2.0)]


class TestTruncNormal(FamilyTestSuite):
    family_name = "truncnormal"
    thetas = [(2.0, 1.0), (-1.0, 1.0), (0.5, 2.0)]


class TestExponential(FamilyTestSuite):
    family_name = "exponential"
    thetas = [(1.0 / 3,), (2.0,)]


class TestGenGamma(FamilyTestSuite):
    family_name = "gengamma"
    thetas = [(1.0, 2.0, 1.5), (2.0, 0.8, 0.7), (0.5, 3.0, 2.0)]


class TestExpWeibull(FamilyTestSuite):
    family_name = "expweibull"
    thetas = [(2.0, 1.0, 0.5), (0.8, 2.0, 3.0), (1.5, 1.0, 1.0), (1.0, 1.0, 0.2)]


class TestCauchy(FamilyTestSuite):
    family_name = "cauchy"
    thetas = [(0.0, 1.0), (5.0, 0.5)]


class TestShiftedGamma(FamilyTestSuite):
    thetas = [(2.0, 1.0), (0.5, 3.0)]

    @pytest.fixture(scope="function")
    def family(self):
        return ShiftedFamily(get_family("gamma"), 2.5)


class TestTruncatedExponential(FamilyTestSuite):
    thetas = [(1.0,), (0.25,)]
    rel_tol = 1e-7

    @pytest.fixture(scope="function")
    def family(self):
        return TruncatedFamily(get_family("exponential"), 1.5)


class TestTruncatedWeibull(FamilyTestSuite):
    thetas = [(2.0, 1.0), (0.8, 3.0)]
    rel_tol = 1e-7

    @pytest.fixture(scope="function")
    def family(self):
        return TruncatedFamily(get_family("weibull"), 1.0)


class TestRegistry(object):
    @staticmethod
    def test_registry_matches_implementations():
        assert set(load_registry()) == set(FAMILIES)

    @staticmethod
    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_registry_entries(name):
        family = get_family(name)
        assert family.param_count == len(family.param_box)
        assert family.default_grid
        assert all(family.is_valid(start) for start in family.default_grid)

    @staticmethod
    def test_unknown_family():
        with pytest.raises(UnknownFamilyError):
            get_family("kumaraswamy")

    @staticmethod
    def test_parameter_order():
        assert get_family("gengamma").param_names == ("scale", "d", "p")
        assert get_family("expweibull").param_names == ("shape", "scale", "alpha")

    @staticmethod
    def test_bounds_count_mismatch():
        with pytest.raises(RegistryError):
            Family("broken", ["a", "b"], [(0.0, 1.0)])


class TestValidation(object):
    @staticmethod
    @pytest.mark.parametrize(
        "name, theta",
        [
            ("gamma", (0.0, 1.0)),
            ("gamma", (-1.0, 1.0)),
            ("gamma", (2.0,)),
            ("normal", (0.0, 0.0)),
            ("exponential", (np.inf,)),
            ("weibull", (np.nan, 1.0)),
        ],
    )
    def test_invalid_theta(name, theta):
        family = get_family(name)
        assert not family.is_valid(theta)
        with pytest.raises(InvalidThetaError):
            family.log_pdf(1.0, theta)

    @staticmethod
    def test_invalid_probability():
        with pytest.raises(InvalidQuantileError):
            get_family("gamma").quantile(1.5, (2.0, 1.0))

    @staticmethod
    def test_scalar_in_scalar_out():
        value = get_family("gamma").cdf(1.0, (2.0, 1.0))
        assert isinstance(value, float)
        assert get_family("gamma").cdf([1.0, 2.0], (2.0, 1.0)).shape == (2,)


class TestLogPdf(object):
    @staticmethod
    def test_exponential():
        assert eval_log_pdf(get_family("exponential"), (1.0,), 1.0) == pytest.approx(-1.0, abs=1e-12)

    @staticmethod
    def test_gamma():
        assert eval_log_pdf(get_family("gamma"), (2.0, 1.0), 2.0) == pytest.approx(np.log(2) - 2, abs=1e-12)

    @staticmethod
    def test_gamma_outside_support():
        assert eval_log_pdf(get_family("gamma"), (2.0, 1.0), -1.0) == -np.inf

    @staticmethod
    def test_log_likelihood():
        assert log_likelihood(get_family("gamma"), (2.0, 1.0), [2.0, 3.0]) == pytest.approx(-3.208241, abs=1e-6)

    @staticmethod
    def test_expweibull_origin():
        family = get_family("expweibull")
        assert family.log_pdf(0.0, (1.0, 1.0, 0.5)) == np.inf
        assert family.log_pdf(0.0, (1.0, 1.0, 1.0)) == pytest.approx(0.0)
        assert family.log_pdf(0.0, (2.0, 1.0, 1.0)) == -np.inf


class TestAgainstScipy(object):
    @staticmethod
    @pytest.mark.parametrize("theta", [(2.0, 1.0), (-1.0, 1.0)])
    def test_truncnormal(theta):
        mu, sigma = theta
        reference = stats.truncnorm(-mu / sigma, np.inf, loc=mu, scale=sigma)
        xs = np.array([0.1, 0.5, 1.0, 3.0])
        family = get_family("truncnormal")
        assert family.cdf(xs, theta) == pytest.approx(reference.cdf(xs), rel=1e-9)
        assert family.log_pdf(xs, theta) == pytest.approx(reference.logpdf(xs), rel=1e-9)
        assert family.mean(theta) == pytest.approx(reference.mean(), rel=1e-9)

    @staticmethod
    def test_gengamma():
        scale, d, p = 2.0, 3.0, 1.5
        reference = stats.gengamma(d / p, p, scale=scale)
        xs = np.array([0.2, 1.0, 2.5, 6.0])
        family = get_family("gengamma")
        assert family.log_pdf(xs, (scale, d, p)) == pytest.approx(reference.logpdf(xs), rel=1e-9)
        assert family.mean((scale, d, p)) == pytest.approx(reference.mean(), rel=1e-9)

    @staticmethod
    def test_expweibull():
        shape, scale, alpha = 1.5, 2.0, 3.0
        reference = stats.exponweib(alpha, shape, scale=scale)
        xs = np.array([0.2, 1.0, 2.5, 6.0])
        family = get_family("expweibull")
        assert family.cdf(xs, (shape, scale, alpha)) == pytest.approx(reference.cdf(xs), rel=1e-9)
        assert family.log_pdf(xs, (shape, scale, alpha)) == pytest.approx(reference.logpdf(xs), rel=1e-9)

    @staticmethod
    @pytest.mark.parametrize("alpha", [0.2, 0.5, 3.0])
    def test_expweibull_lower_tail(alpha):
        # with shape = scale = 1, F(x) = (1 - exp(-x))^alpha
        family = get_family("expweibull")
        theta = (1.0, 1.0, alpha)
        qs = np.array([1e-12, 1e-8, 1e-4, 1e-3, 0.01, 0.3])
        xs = family.quantile(qs, theta)
        assert xs == pytest.approx(-np.log1p(-qs ** (1.0 / alpha)), rel=1e-9)
        assert family.cdf(xs, theta) == pytest.approx(qs, rel=1e-9)

    @staticmethod
    def test_expweibull_small_alpha_draws_are_positive():
        draws = get_family("expweibull").rvs(10 ** 4, (1.0, 1.0, 0.2), np.random.default_rng(3))
        assert np.all(draws > 0)

    @staticmethod
    def test_numerical_mean():
        # alpha = 1 is the Weibull, whose mean is closed form
        mean = get_family("expweibull").mean((1.5, 2.0, 1.0))
        assert mean == pytest.approx(get_family("weibull").mean((1.5, 2.0)), rel=1e-7)

    @staticmethod
    def test_cauchy_reference_scale():
        family = get_family("cauchy")
        assert np.isnan(family.mean((0.0, 2.0)))
        assert family.reference_scale((0.0, 2.0)) == 2.0


class TestSample(object):
    @staticmethod
    def test_positive():
        drawn = distributions.sample(get_family("exponential"), (1.0 / 3,), 5, seed=7)
        assert drawn.n == 5
        assert np.all(drawn.values > 0)

    @staticmethod
    @pytest.mark.parametrize("name", sorted(FAMILIES))
    def test_deterministic(name):
        family = get_family(name)
        theta = family.default_grid[0]
        first = distributions.sample(family, theta, 1, seed=11)
        second = distributions.sample(family, theta, 1, seed=11)
        assert first.values[0] == second.values[0]

    @staticmethod
    def test_cauchy_median():
        drawn = distributions.sample(get_family("cauchy"), (0.0, 1.0), 10 ** 4, seed=3)
        assert abs(np.median(drawn.values)) < 0.05

    @staticmethod
    def test_invalid_size():
        with pytest.raises(ValueError):
            distributions.sample(get_family("gamma"), (2.0, 1.0), 0, seed=0)


class TestTruncation(object):
    @staticmethod
    def test_gamma_identity():
        base = get_family("gamma")
        truncated = truncate_family(base, 1.0)
        ll_truncated = log_likelihood(truncated, (2.0, 1.0), [1.0, 2.0])
        ll_original = log_likelihood(base, (2.0, 1.0), [2.0, 3.0])
        assert ll_truncated == pytest.approx(-2.594535, abs=1e-6)
        assert ll_original == pytest.approx(-3.208241, abs=1e-6)
        assert truncated.log_lambda((2.0, 1.0)) == pytest.approx(1 - np.log(2), abs=1e-12)
        assert ll_truncated == pytest.approx(ll_original + 2 * truncated.log_lambda((2.0, 1.0)), abs=1e-12)

    @staticmethod
    def test_zero_truncation():
        base = get_family("weibull")
        values = [0.5, 1.5, 2.0]
        assert log_likelihood(truncate_family(base, 0.0), (2.0, 1.0), values) == pytest.approx(
            log_likelihood(base, (2.0, 1.0), values), abs=1e-12
        )

    @staticmethod
    def test_fuzzed_identity():
        rng = np.random.default_rng(20200505)
        for _ in range(100):
            base = get_family(POSITIVE_FAMILIES[rng.integers(len(POSITIVE_FAMILIES))])
            theta = base.default_grid[rng.integers(len(base.default_grid))]
            c = base.quantile(rng.uniform(0.05, 0.9), theta)
            truncated = truncate_family(base, c)
            y = truncated.rvs(int(rng.integers(1, 30)), theta, rng)
            expected = log_likelihood(base, theta, y + c) + y.size * truncated.log_lambda(theta)
            assert abs(log_likelihood(truncated, theta, y) - expected) <= 1e-9

    @staticmethod
    def test_degenerate():
        truncated = truncate_family(get_family("gamma"), 1e4)
        with pytest.raises(DegenerateTruncationError):
            truncated.log_lambda((2.0, 1.0))
        assert truncated.log_pdf(1.0, (2.0, 1.0)) == -np.inf


class TestExpectedLogLikelihood(object):
    @staticmethod
    def test_exponential_negative_entropy():
        exponential = get_family("exponential")
        assert expected_log_likelihood(exponential, (1.0,), exponential, (1.0,)) == pytest.approx(-1.0, abs=1e-6)

    @staticmethod
    @pytest.mark.parametrize(
        "name, theta", [("gamma", (2.0, 1.0)), ("weibull", (1.5, 2.0)), ("lognormal", (0.0, 0.5))]
    )
    def test_negative_entropy_monte_carlo(name, theta):
        family = get_family(name)
        draws = family.rvs(10 ** 6, theta, np.random.default_rng(5))
        log_densities = family.log_pdf(draws, theta)
        standard_error = log_densities.std() / np.sqrt(draws.size)
        value = expected_log_likelihood(family, theta, family, theta)
        assert abs(value - log_densities.mean()) < 4 * standard_error

    @staticmethod
    def test_gibbs_inequality():
        rng = np.random.default_rng(42)
        truth = get_family("gamma")
        for _ in range(20):
            theta1 = (rng.uniform(0.5, 10), rng.uniform(0.5, 10))
            best = expected_log_likelihood(truth, theta1, truth, theta1)
            for name in ("gamma", "weibull", "lognormal"):
                candidate = get_family(name)
                theta2 = candidate.default_grid[rng.integers(len(candidate.default_grid))]
                assert expected_log_likelihood(candidate, theta2, truth, theta1) <= best + 1e-7

    @staticmethod
    def test_candidate_vanishes_on_truth_mass():
        exponential = get_family("exponential")
        shifted = ShiftedFamily(exponential, 1.0)
        assert expected_log_likelihood(shifted, (1.0,), exponential, (1.0,)) == -np.inf
        with pytest.raises(DivergentIntegralError):
            expected_log_likelihood(shifted, (1.0,), exponential, (1.0,), strict=True)

    @staticmethod
    def test_shifted_candidate_below_truth():
        exponential = get_family("exponential")
        truth = ShiftedFamily(exponential, 1.0)
        shifted = ShiftedFamily(exponential, 0.5)
        value = expected_log_likelihood(shifted, (1.0,), truth, (1.0,))
        assert value == pytest.approx(-1.5, abs=1e-6)
