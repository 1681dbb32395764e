# -*- coding: utf-8 -*-

import json
import os

import numpy as np
import pytest

from minshift.cli import EXIT_INVALID_INPUT, EXIT_IO_ERROR, EXIT_OK, main


@pytest.fixture
def data_file(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("value\n" + "".join("{!r}\n".format(5.0 + x) for x in np.linspace(0.1, 3.0, 30) ** 2))
    return str(path)


class TestEstimate(object):
    @staticmethod
    def test_hand_values(tmp_path, capsys):
        path = tmp_path / "triple.csv"
        path.write_text("4\n5\n6\n")
        assert main(["estimate", "--data", str(path)]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["n"] == 3
        assert report["c2"] == pytest.approx(3.666667, abs=1e-6)
        assert report["c4"] == pytest.approx(3.215900, abs=1e-6)

    @staticmethod
    def test_parse_error(tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("4\n5\nabc\n")
        assert main(["estimate", "--data", str(path)]) == EXIT_INVALID_INPUT

    @staticmethod
    def test_missing_file(tmp_path):
        assert main(["estimate", "--data", str(tmp_path / "missing.csv")]) == EXIT_IO_ERROR

    @staticmethod
    def test_invalid_nu(data_file):
        assert main(["estimate", "--data", data_file, "--nu", "2"]) == EXIT_INVALID_INPUT


class TestMinq(object):
    @staticmethod
    def test_exponential(capsys):
        assert main(["minq", "--family", "exponential", "--theta", "0.3333333333333333", "--n", "100", "--q", "0.5"]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(0.020794, abs=1e-6)

    @staticmethod
    def test_invalid_q():
        assert main(["minq", "--family", "gamma", "--theta", "2,1", "--n", "10", "--q", "1"]) == EXIT_INVALID_INPUT

    @staticmethod
    def test_invalid_theta():
        assert main(["minq", "--family", "gamma", "--theta", "2", "--n", "10", "--q", "0.5"]) == EXIT_INVALID_INPUT

    @staticmethod
    def test_unknown_family():
        with pytest.raises(SystemExit) as excinfo:
            main(["minq", "--family", "beta", "--theta", "2,1", "--n", "10", "--q", "0.5"])
        assert excinfo.value.code == 2


class TestFit(object):
    @staticmethod
    def test_fit(data_file, capsys):
        assert main(["fit", "--data", data_file, "--family", "gamma", "--method", "shift-c2"]) == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["family"] == "gamma"
        assert result["method"] == "shift-c2"
        assert len(result["theta_hat"]) == 2
        assert set(result) >= {"c_hat", "loglik", "aic", "converged", "n_evals", "wall_time"}

    @staticmethod
    def test_config(data_file, tmp_path, capsys):
        config = tmp_path / "fit.yaml"
        config.write_text("fit:\n  grids:\n    gamma: [[2, 1]]\nmethod:\n  c_lower_bound: -inf\n")
        assert main(["fit", "--data", data_file, "--family", "gamma", "--method", "infer-c", "--config", str(config)]) == 0
        assert json.loads(capsys.readouterr().out)["n_params"] == 3

    @staticmethod
    def test_bad_config(data_file, tmp_path):
        config = tmp_path / "fit.yaml"
        config.write_text("fit:\n  max_iters: many\n")
        assert main(["fit", "--data", data_file, "--family", "gamma", "--method", "baseline", "--config", str(config)]) == 2


class TestExperiment(object):
    @staticmethod
    @pytest.mark.parametrize("format", ["csv", "json"])
    def test_cauchy(tmp_path, format):
        config = tmp_path / "cauchy.yaml"
        config.write_text("experiment:\n  sample_sizes: [10]\n  replications: 3\n")
        out = str(tmp_path / ("cauchy." + format))
        argv = ["worstcase-cauchy", "--config", str(config), "--seed", "4", "--out", out, "--format", format]
        assert main(argv) == EXIT_OK
        assert os.path.exists(out)
        assert os.path.exists(str(tmp_path / ("cauchy.aggregates." + format)))

    @staticmethod
    def test_unwritable(tmp_path):
        config = tmp_path / "cauchy.yaml"
        config.write_text("experiment:\n  sample_sizes: [10]\n  replications: 3\n")
        out = str(tmp_path / "missing" / "cauchy.csv")
        assert main(["worstcase-cauchy", "--config", str(config), "--out", out]) == EXIT_IO_ERROR
