# -*- coding: utf-8 -*-

import numpy as np
import pytest
from mock import MagicMock

from minshift.data_structs import ParamVector, Sample
from minshift.distributions import TruncatedFamily, get_family, sample
from minshift.estimators import c2
from minshift.exceptions import (
    DivergedFitError,
    InsufficientSampleError,
    InvalidMethodError,
    RequiresPositiveSupportError,
)
from minshift.fitting import (
    BASELINE,
    INFER_C,
    ITERATED,
    SHIFT_C1,
    SHIFT_C2,
    FitConfig,
    FitResult,
    ShiftMethod,
    aic,
    aic_value,
    build_objective,
    fit,
    initial_points,
)

GAMMA = get_family("gamma")
EXPONENTIAL = get_family("exponential")


def _result(**kwargs):
    defaults = dict(
        family="gamma",
        method=BASELINE,
        theta_hat=ParamVector([2, 1]),
        c_hat=0.0,
        loglik=-10.0,
        aic=24.0,
        converged=True,
        n_evals=100,
        n_params=2,
    )
    defaults.update(kwargs)
    return FitResult(**defaults)


@pytest.fixture(scope="module")
def far_sample():
    """ gamma(2, 1) moved far from the origin. """
    return sample(GAMMA, (2.0, 1.0), 100, seed=12).shifted(-1000.0)


class TestShiftMethod(object):
    @staticmethod
    def test_unknown_kind():
        with pytest.raises(InvalidMethodError):
            ShiftMethod("shift-c5")

    @staticmethod
    @pytest.mark.parametrize("median_q", [0.0, 1.0])
    def test_median_q(median_q):
        with pytest.raises(InvalidMethodError):
            ShiftMethod(ITERATED, median_q=median_q)

    @staticmethod
    def test_extra_params():
        assert ShiftMethod(INFER_C).extra_params == 1
        assert ShiftMethod(SHIFT_C2).extra_params == 0

    @staticmethod
    def test_negative_infinite_lower_bound():
        assert ShiftMethod(INFER_C, c_lower_bound=-np.inf).c_lower_bound == -np.inf


class TestFitConfig(object):
    @staticmethod
    @pytest.mark.parametrize(
        "kwargs", [{"grid": []}, {"max_iters": 0}, {"rel_tol": 0.0}, {"optimizer": "bfgs"}, {"jitter": -1.0}]
    )
    def test_invalid(kwargs):
        with pytest.raises(InvalidMethodError):
            FitConfig(**kwargs)

    @staticmethod
    def test_starts():
        assert FitConfig().starts(GAMMA) == GAMMA.default_grid
        assert FitConfig(grid=[[1, 1]]).starts(GAMMA) == [ParamVector([1.0, 1.0])]


class TestAic(object):
    @staticmethod
    def test_values():
        assert aic_value(2, -10.0) == 24.0
        assert aic_value(5, 0.0) == 10.0
        assert aic(_result()) == 24.0

    @staticmethod
    def test_diverged():
        with pytest.raises(DivergedFitError):
            aic(_result(converged=False, aic=np.inf))

    @staticmethod
    def test_extra_parameter_costs_two():
        inferred = _result(method=INFER_C, n_params=3, aic=26.0)
        assert aic(inferred) - aic(_result(method=SHIFT_C2)) == 2.0

    @staticmethod
    def test_to_dict():
        result = _result(wall_time=1.5)
        assert result.to_dict()["wall_time"] == 1.5
        assert "wall_time" not in result.to_dict(with_wall_time=False)
        assert result.to_dict()["theta_hat"] == [2.0, 1.0]


class TestObjective(object):
    @staticmethod
    def test_baseline_exponential():
        objective = build_objective(ShiftMethod(BASELINE), EXPONENTIAL, Sample([1, 2, 3]))
        assert objective(np.array([1.0])) == pytest.approx(6.0, abs=1e-12)
        assert objective.n_evals == 1

    @staticmethod
    def test_shift_equals_baseline_on_shifted_sample():
        data = Sample([4.0, 5.0, 6.5, 7.0, 9.0])
        shifted = data.shifted(c2(data))
        shift_objective = build_objective(ShiftMethod(SHIFT_C2), GAMMA, data)
        baseline_objective = build_objective(ShiftMethod(BASELINE), GAMMA, shifted)
        for x in ([1.0, 1.0], [2.0, 0.5], [5.0, 2.0]):
            assert shift_objective(np.array(x)) == baseline_objective(np.array(x))

    @staticmethod
    def test_invalid_theta_penalty():
        objective = build_objective(ShiftMethod(BASELINE), GAMMA, Sample([1, 2, 3, 4]))
        assert objective(np.array([-1.0, 1.0])) == np.inf

    @staticmethod
    def test_iterated_penalty():
        objective = build_objective(ShiftMethod(ITERATED), GAMMA, Sample([0.1, 0.5, 1.0, 2.0, 3.0]))
        assert objective(np.array([10.0, 10.0])) == np.inf
        assert np.isfinite(objective(np.array([0.5, 0.5])))
        assert objective.shift(np.array([0.5, 0.5])) < 0.1

    @staticmethod
    def test_infer_c_penalties():
        objective = build_objective(ShiftMethod(INFER_C), GAMMA, Sample([1.0, 2.0, 3.0, 4.0]))
        assert objective.dimension == 3
        assert objective(np.array([2.0, 1.0, 1.0])) == np.inf
        assert objective(np.array([2.0, 1.0, -0.5])) == np.inf
        assert np.isfinite(objective(np.array([2.0, 1.0, 0.5])))

    @staticmethod
    def test_infer_c_unbounded_below():
        method = ShiftMethod(INFER_C, c_lower_bound=-np.inf)
        objective = build_objective(method, GAMMA, Sample([1.0, 2.0, 3.0, 4.0]))
        assert np.isfinite(objective(np.array([2.0, 1.0, -0.5])))

    @staticmethod
    def test_insufficient_sample():
        with pytest.raises(InsufficientSampleError):
            build_objective(ShiftMethod(BASELINE), GAMMA, Sample([1.0, 2.0, 3.0]))

    @staticmethod
    def test_estimator_errors_propagate():
        with pytest.raises(RequiresPositiveSupportError):
            build_objective(ShiftMethod(SHIFT_C1), GAMMA, Sample([-1.0, 2.0, 3.0, 4.0]))


class TestInitialPoints(object):
    @staticmethod
    def test_infer_c_start():
        data = Sample([4.0, 5.0, 6.0, 7.0])
        starts = initial_points(ShiftMethod(INFER_C), GAMMA, data, FitConfig(grid=[[1, 1], [2, 2]]))
        assert len(starts) == 2
        assert starts[0][-1] == pytest.approx(data.min - data.sd / data.n)

    @staticmethod
    def test_infer_c_start_clamped():
        data = Sample([0.01, 5.0, 6.0, 40.0])
        starts = initial_points(ShiftMethod(INFER_C), GAMMA, data, FitConfig(grid=[[1, 1]]))
        assert 0.0 <= starts[0][-1] < data.min

    @staticmethod
    def test_lower_bound_above_minimum():
        with pytest.raises(InvalidMethodError):
            initial_points(ShiftMethod(INFER_C, c_lower_bound=5.0), GAMMA, Sample([4.0, 5.0, 6.0, 7.0]), FitConfig())

    @staticmethod
    def test_wrong_start_length():
        with pytest.raises(InvalidMethodError):
            initial_points(ShiftMethod(BASELINE), GAMMA, Sample([4.0, 5.0, 6.0, 7.0]), FitConfig(grid=[[1.0]]))


class TestFit(object):
    @staticmethod
    @pytest.mark.parametrize("seed", range(20))
    def test_exponential_closed_form(seed):
        data = sample(EXPONENTIAL, (1.0 / 3,), 1000, seed=seed)
        result = fit(ShiftMethod(BASELINE), EXPONENTIAL, data)
        assert result.converged
        assert result.theta_hat[0] == pytest.approx(1.0 / data.mean, rel=1e-6)
        assert result.c_hat == 0.0
        assert result.aic == pytest.approx(2 - 2 * result.loglik)

    @staticmethod
    def test_shift_c2_is_baseline_on_shifted_sample():
        data = sample(GAMMA, (2.0, 1.0), 200, seed=4).shifted(-5.0)
        shifted = fit(ShiftMethod(SHIFT_C2), GAMMA, data)
        baseline = fit(ShiftMethod(BASELINE), GAMMA, data.shifted(c2(data)))
        assert shifted.c_hat == c2(data)
        assert np.allclose(shifted.theta_hat, baseline.theta_hat, rtol=0, atol=1e-10)
        assert shifted.loglik == pytest.approx(baseline.loglik, abs=1e-10)

    @staticmethod
    def test_truncated_argmax():
        data = sample(GAMMA, (2.0, 1.0), 200, seed=8)
        c = data.min / 10.0
        truncated = TruncatedFamily(GAMMA, c)
        base_fit = fit(ShiftMethod(BASELINE), GAMMA, data)
        truncated_fit = fit(ShiftMethod(BASELINE), truncated, data.shifted(c))
        assert base_fit.converged and truncated_fit.converged
        assert np.allclose(truncated_fit.theta_hat, base_fit.theta_hat, rtol=1e-4)
        difference = truncated_fit.loglik - base_fit.loglik
        assert difference == pytest.approx(data.n * truncated.log_lambda(truncated_fit.theta_hat), abs=1e-6)

    @staticmethod
    @pytest.mark.parametrize("name", ["gamma", "normal"])
    def test_constant_sample_diverges(name):
        result = fit(ShiftMethod(BASELINE), get_family(name), Sample([5.0] * 10))
        assert not result.converged
        assert result.aic == np.inf

    @staticmethod
    def test_far_sample_shift_beats_baseline(far_sample):
        baseline = fit(ShiftMethod(BASELINE), GAMMA, far_sample)
        shifted = fit(ShiftMethod(SHIFT_C2), GAMMA, far_sample)
        assert shifted.converged
        assert shifted.loglik >= baseline.loglik

    @staticmethod
    def test_infer_c_stays_below_minimum(far_sample):
        result = fit(ShiftMethod(INFER_C), GAMMA, far_sample)
        assert result.n_params == 3
        assert 0.0 <= result.c_hat < far_sample.min

    @staticmethod
    def test_iterated_stays_below_minimum(far_sample):
        result = fit(ShiftMethod(ITERATED), GAMMA, far_sample)
        assert result.n_params == 2
        assert result.c_hat < far_sample.min

    @staticmethod
    def test_best_of_grid_improves_every_start():
        data = sample(get_family("weibull"), (2.0, 3.0), 50, seed=1)
        method = ShiftMethod(SHIFT_C2)
        result = fit(method, GAMMA, data)
        objective = build_objective(method, GAMMA, data)
        for start in GAMMA.default_grid:
            assert -result.loglik <= objective(np.asarray(start))

    @staticmethod
    def test_deterministic_with_jitter():
        data = sample(GAMMA, (2.0, 1.0), 50, seed=2)
        cfg = FitConfig(jitter=0.01)
        first = fit(ShiftMethod(BASELINE), GAMMA, data, cfg, seed=9)
        second = fit(ShiftMethod(BASELINE), GAMMA, data, cfg, seed=9)
        assert first.to_dict(with_wall_time=False) == second.to_dict(with_wall_time=False)

    @staticmethod
    def test_info_streamer():
        streamer = MagicMock()
        data = sample(EXPONENTIAL, (1.0,), 20, seed=0)
        fit(ShiftMethod(BASELINE), EXPONENTIAL, data, info_streamer=streamer)
        calls = [call[1] for call in streamer.send_info.call_args_list]
        assert calls[0] == {"fit_name": "exponential/baseline", "begin": True}
        assert calls[-1]["end"] and not calls[-1]["diverged"]
