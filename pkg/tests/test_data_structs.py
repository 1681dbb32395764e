# -*- coding: utf-8 -*-

import numpy as np
import pytest

from minshift.data_structs import ParamVector, Sample
from minshift.exceptions import InvalidSampleError


class TestParamVector(object):
    @staticmethod
    def test_init():
        theta = ParamVector([2, 1])
        assert theta == (2.0, 1.0)
        assert all(isinstance(value, float) for value in theta)

    @staticmethod
    def test_repr():
        assert repr(ParamVector([2, 1])) == "ParamVector(2.0, 1.0)"

    @staticmethod
    def test_hashable():
        assert {ParamVector([1, 2]): "a"}[ParamVector([1.0, 2.0])] == "a"


class TestSample(object):
    @staticmethod
    def test_statistics():
        s = Sample([4, 5, 6])
        assert (s.n, s.min, s.mean, s.sd) == (3, 4.0, 5.0, 1.0)

    @staticmethod
    def test_single_value_sd():
        assert Sample([7]).sd == 0.0

    @staticmethod
    def test_order_preserved():
        assert list(Sample([3, 1, 2])) == [3.0, 1.0, 2.0]

    @staticmethod
    def test_immutable():
        s = Sample([1, 2, 3])
        with pytest.raises(ValueError):
            s.values[0] = 10

    @staticmethod
    def test_input_not_aliased():
        values = np.array([1.0, 2.0])
        s = Sample(values)
        values[0] = 100
        assert s.min == 1.0

    @staticmethod
    @pytest.mark.parametrize("values", [[], [1.0, np.nan], [np.inf, 1.0]])
    def test_invalid(values):
        with pytest.raises(InvalidSampleError):
            Sample(values)

    @staticmethod
    def test_shifted():
        s = Sample([4, 5, 6]).shifted(4)
        assert list(s.values) == [0.0, 1.0, 2.0]
        assert s.sd == 1.0

    @staticmethod
    def test_subsample():
        s = Sample(np.arange(10))
        sub = s.subsample(4, np.random.default_rng(0))
        assert sub.n == 4
        assert set(sub.values) <= set(s.values)
        assert list(sub.values) == sorted(sub.values)

    @staticmethod
    def test_subsample_deterministic():
        s = Sample(np.arange(50))
        a = s.subsample(10, np.random.default_rng(3)).values
        b = s.subsample(10, np.random.default_rng(3)).values
        assert np.array_equal(a, b)

    @staticmethod
    @pytest.mark.parametrize("size", [0, 11])
    def test_subsample_out_of_range(size):
        with pytest.raises(InvalidSampleError):
            Sample(np.arange(10)).subsample(size, np.random.default_rng(0))

    @staticmethod
    def test_len_repr():
        s = Sample([1, 2])
        assert len(s) == 2
        assert repr(s).startswith("Sample(n=2")
