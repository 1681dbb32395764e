# -*- coding: utf-8 -*-

"""
YAML configuration of fits and experiments.

    fit:
      max_iters: 2000
      rel_tol: 1.0e-8
      optimizer: simplex
      jitter: 0.0
      grids:
        gamma: [[1, 1], [2, 10]]
    method:
      c_lower_bound: 0       # "-inf" allowed
      median_q: 0.5
    estimators:
      k: 10
      nu: 0.05
    experiment:
      kind: method-compare
      datasets:
        - {path: winequality-red.csv, column: alcohol, delimiter: ";"}
      families: [gamma, weibull]
      sample_sizes: [20, 100]
      replications: 5
      seed: 1

Every section and key is optional: defaults are those of EstimatorConfig, FitConfig, ShiftMethod and the
experiment's protocol (harness.DEFAULTS). Relative dataset paths are resolved from the config file's directory.
"""

import dataclasses
import os

import yaml

from .estimators import EstimatorConfig
from .exceptions import ConfigError, MinshiftException
from .fitting import FitConfig, ShiftMethod
from .harness import make_spec

SCHEMA = {
    "fit": {"max_iters": int, "rel_tol": float, "optimizer": str, "jitter": float, "grids": dict},
    "method": {"c_lower_bound": float, "median_q": float},
    "estimators": {"k": float, "nu": float},
    "experiment": {
        "kind": str,
        "datasets": list,
        "families": list,
        "methods": list,
        "estimators": list,
        "sample_sizes": list,
        "replications": int,
        "seed": int,
        "workers": int,
        "record_timings": bool,
        "truth": dict,
        "shifts": list,
        "grid_points": list,
    },
}


def _coerce(section, key, value, expected):
    where = "{}.{}".format(section, key)
    if expected is float:
        if isinstance(value, str) and value.strip().lower() in ("-inf", "-.inf"):
            return float("-inf")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError("{} must be a number, got {!r}".format(where, value))
        return float(value)
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError("{} must be an integer, got {!r}".format(where, value))
        return value
    if not isinstance(value, expected):
        raise ConfigError("{} must be a {}, got {!r}".format(where, expected.__name__, value))
    return value


def _validate(document):
    if document is None:
        return {}
    if not isinstance(document, dict):
        raise ConfigError("A configuration is a mapping of sections, got {!r}".format(document))
    unknown = set(document) - set(SCHEMA)
    if unknown:
        raise ConfigError("Unknown sections: {}".format(", ".join(sorted(unknown))))
    sections = {}
    for section, content in document.items():
        content = content or {}
        if not isinstance(content, dict):
            raise ConfigError("Section {} must be a mapping, got {!r}".format(section, content))
        unknown = set(content) - set(SCHEMA[section])
        if unknown:
            raise ConfigError(
                "Unknown keys in {}: {}".format(section, ", ".join(sorted(str(key) for key in unknown)))
            )
        sections[section] = {
            key: _coerce(section, key, value, SCHEMA[section][key]) for key, value in content.items()
        }
    return sections


class Config(object):
    """ A validated configuration. Builds the configuration objects of fits and experiments. """

    def __init__(self, sections=None, base_dir=None):
        self.sections = _validate(sections)
        self.base_dir = base_dir

    def section(self, name):
        return dict(self.sections.get(name, {}))

    def _build(self, cls, *args, **kwargs):
        try:
            return cls(*args, **kwargs)
        except MinshiftException as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError("{}: {}".format(type(exc).__name__, exc))

    def estimator_config(self):
        return self._build(EstimatorConfig, **self.section("estimators"))

    def grids(self):
        grids = self.section("fit").get("grids", {})
        for name, grid in grids.items():
            if not isinstance(grid, list):
                raise ConfigError("fit.grids.{} must be a list of starts, got {!r}".format(name, grid))
        return grids

    def fit_config(self, family_name=None):
        """ FitConfig, with the grid configured for family_name if any. """
        settings = self.section("fit")
        settings.pop("grids", None)
        cfg = self._build(FitConfig, **settings)
        grid = self.grids().get(family_name)
        if grid is not None:
            cfg = self._build(dataclasses.replace, cfg, grid=grid)
        return cfg

    def method(self, kind):
        return self._build(ShiftMethod, kind=kind, estimator_cfg=self.estimator_config(), **self.section("method"))

    def experiment_spec(self, kind=None, **overrides):
        """ ExperimentSpec from the experiment section. kind and overrides (e.g. seed, workers from the command
        line) take precedence over the file. """
        settings = self.section("experiment")
        kind = kind or settings.pop("kind", None)
        settings.pop("kind", None)
        if kind is None:
            raise ConfigError("No experiment kind given")
        settings.update({key: value for key, value in overrides.items() if value is not None})
        method = self.section("method")
        return self._build(
            make_spec,
            kind,
            estimator_cfg=self.estimator_config(),
            fit_cfg=self.fit_config(),
            grids=self.grids(),
            base_dir=self.base_dir,
            **dict(method, **settings)
        )


def load_config(path=None):
    """ Read a YAML configuration file. No path gives the defaults.
    Raises:
        ConfigError: malformed YAML, unknown sections or keys, invalid values.
        OSError: unreadable file.
    """
    if path is None:
        return Config()
    with open(path) as config_file:
        try:
            document = yaml.safe_load(config_file)
        except yaml.YAMLError as exc:
            raise ConfigError("{} is not valid YAML: {}".format(path, exc))
    return Config(document, base_dir=os.path.dirname(os.path.abspath(path)))
