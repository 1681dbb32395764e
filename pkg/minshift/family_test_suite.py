# -*- coding: utf-8 -*-

import types

import numpy as np
import pytest
from scipy import integrate, stats

from .distributions import get_family
from .order_stats import MinDistribution

"""
    Family Testing How-To:

    To test a family, inherit from FamilyTestSuite in your test file and set family_name and thetas.
    The name of the class you have created should begin with 'Test' for pytest to collect it.
    Every test of the suite runs once per parameter vector of thetas.
    To add a function fixture to all tests, decorate your inherited class with pytest.mark.usefixtures().

    ```python
    from minshift.family_test_suite import FamilyTestSuite

    class TestGamma(FamilyTestSuite):
        family_name = "gamma"
        thetas = [(0.5, 1.0), (2.0, 1.0), (10.0, 3.0)]
    ```

    Override the family fixture to test a family that is not registered (e.g. a ShiftedFamily).
"""

ROUND_TRIP_QS = [1e-4, 1e-3, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 0.999]
NORMALIZATION_QS = [
    1e-9, 1e-7, 1e-5, 1e-3, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 1 - 1e-3, 1 - 1e-5, 1 - 1e-7, 1 - 1e-9
]
MIN_QS = [0.001] + [round(0.05 * i, 2) for i in range(1, 20)] + [0.999]
MIN_SIZES = [1, 10, 100, 1000]
KS_DRAWS = 10 ** 4
KS_SIGNIFICANCE = 0.001


def _copy_func(func, name=None):
    return types.FunctionType(
        func.__code__,
        func.__globals__,
        name or func.__name__,
        func.__defaults__,
        func.__closure__,
    )


def _theta_param(self, request):
    yield request.param


def _theta_fixture(thetas):
    # pytest stores the parametrization on the function itself, so every suite gets its own copy.
    return pytest.fixture(
        scope="function", params=list(thetas), ids=[repr(tuple(theta)) for theta in thetas]
    )(_copy_func(_theta_param, "theta_fixture"))


class _FamilyTestSuiteMetaclass(type):
    def __new__(mcs, name, bases, attrs):
        # theta_fixture is parametrized by the thetas of the class being built.
        attrs["theta_fixture"] = _theta_fixture(attrs.get("thetas", []))
        # pytest.mark.usefixtures on subclasses does not reach inherited tests
        # (https://github.com/pytest-dev/pytest/issues/2806): copy them on the subclass.
        for base in bases:
            for attr_name, attr in vars(base).items():
                if attr_name.startswith("test") and callable(attr) and attr_name not in attrs:
                    attrs[attr_name] = _copy_func(attr)
        return type.__new__(mcs, name, bases, attrs)


class FamilyTestSuite(metaclass=_FamilyTestSuiteMetaclass):
    family_name = None
    thetas = []
    # round trips through a difference of large quantiles lose digits: wrappers may loosen this
    rel_tol = 1e-9

    @pytest.fixture(scope="function")
    def family(self):
        return get_family(self.family_name)

    def test_family__quantile_cdf_round_trip(self, family, theta_fixture):
        xs = family.quantile(np.array(ROUND_TRIP_QS), theta_fixture)
        back = family.quantile(family.cdf(xs, theta_fixture), theta_fixture)
        assert back == pytest.approx(xs, rel=self.rel_tol, abs=1e-12)

    def test_family__normalization(self, family, theta_fixture):
        cuts = family.quantile(np.array(NORMALIZATION_QS), theta_fixture)
        mass = NORMALIZATION_QS[0] + (1 - NORMALIZATION_QS[-1])
        for low, high in zip(cuts[:-1], cuts[1:]):
            piece, _ = integrate.quad(lambda x: family.pdf(x, theta_fixture), low, high, limit=200)
            mass += piece
        assert mass == pytest.approx(1.0, abs=1e-6)

    def test_family__log_pdf_consistency(self, family, theta_fixture):
        xs = family.quantile(np.linspace(0.05, 0.95, 19), theta_fixture)
        log_densities = family.log_pdf(xs, theta_fixture)
        assert np.all(family.pdf(xs, theta_fixture) >= 0)
        assert log_densities == pytest.approx(np.log(family.pdf(xs, theta_fixture)), rel=1e-12, abs=1e-12)
        lower = family.support_lower(theta_fixture)
        if np.isfinite(lower):
            assert family.log_pdf(lower - 1.0, theta_fixture) == -np.inf
            assert family.cdf(lower - 1.0, theta_fixture) == 0

    def test_family__sampler_matches_cdf(self, family, theta_fixture):
        draws = family.rvs(KS_DRAWS, theta_fixture, np.random.default_rng(20200505))
        result = stats.kstest(draws, lambda x: family.cdf(x, theta_fixture))
        assert result.pvalue > KS_SIGNIFICANCE

    def test_family__min_quantile_round_trip(self, family, theta_fixture):
        for n in MIN_SIZES:
            md = MinDistribution(family, theta_fixture, n)
            for q in MIN_QS:
                assert md.cdf(md.quantile(q)) == pytest.approx(q, rel=self.rel_tol, abs=1e-12)
