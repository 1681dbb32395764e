# -*- coding: utf-8 -*-

"""
Experiment runners. Every study is a list of independent cells executed by a CellsPipeline, then folded into an
ExperimentReport:

    * method-compare:    AIC of every (family, method) on subsamples of real datasets.
    * multi-dataset:     per dataset, gap between each method's best log-likelihood and the best of all methods.
    * exp-worstcase:     log-likelihood gain and distance to the 5% min-quantile of the estimators on an exponential.
    * cauchy-worstcase:  F(c) of the additive estimators on a Cauchy.
    * synthetic-grid:    distance metrics of the estimators over a grid of generalized gamma and
                         exponentiated Weibull generators.
    * shift-tradeoff:    best same-family approximation of the truncated truth, for a list of shifts.

All randomness derives from spec.seed through datasets.child_seed, so reports do not depend on the number of workers.
"""

import dataclasses
import itertools
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

import numpy as np
from scipy import integrate, optimize

from .data_structs import ParamVector
from .datasets import child_seed, load_datasets
from .distributions import (
    FAMILIES,
    TruncatedFamily,
    expected_log_likelihood,
    get_family,
    log_likelihood,
    sample as draw_sample,
)
from .estimators import ESTIMATORS, EstimatorConfig, estimate
from .exceptions import ConfigError, FitException, MinshiftException
from .fitting import BASELINE, KINDS as METHODS, FitConfig, ShiftMethod, fit
from .order_stats import baseline_q05, distance_report
from .pipeline import Cell, CellsPipeline
from .reports import ExperimentReport, format_theta, group_rows, mean_half_width, quantile
from .streamers import logger

METHOD_COMPARE = "method-compare"
MULTI_DATASET = "multi-dataset"
EXP_WORSTCASE = "exp-worstcase"
CAUCHY_WORSTCASE = "cauchy-worstcase"
SYNTHETIC_GRID = "synthetic-grid"
SHIFT_TRADEOFF = "shift-tradeoff"

KINDS = (METHOD_COMPARE, MULTI_DATASET, EXP_WORSTCASE, CAUCHY_WORSTCASE, SYNTHETIC_GRID, SHIFT_TRADEOFF)

DEFAULTS = {
    METHOD_COMPARE: {
        "datasets": [{"path": "data/winequality-red.csv", "column": "alcohol", "delimiter": ";"}],
        "families": ["gamma", "weibull", "lognormal", "normal", "truncnormal"],
        "methods": list(METHODS),
        "sample_sizes": [20, 100, 1599],
        "replications": 5,
    },
    MULTI_DATASET: {
        "datasets": [{"generator": "synthetic", "count": 37, "size": 200}],
        "families": ["gamma", "weibull", "lognormal"],
        "methods": list(METHODS),
    },
    EXP_WORSTCASE: {
        "truth": {"family": "exponential", "theta": [1.0 / 3.0]},
        "estimators": ["c1", "c2", "c3", "c4"],
        "sample_sizes": [10, 100, 1000],
        "replications": 200,
    },
    CAUCHY_WORSTCASE: {
        "truth": {"family": "cauchy", "theta": [0.0, 1.0]},
        "estimators": ["c2", "c3", "c4"],
        "sample_sizes": [10, 20, 50, 100, 200],
        "replications": 200,
    },
    SYNTHETIC_GRID: {
        "estimators": ["c1", "c2", "c3", "c4"],
        "sample_sizes": [10, 100],
        "replications": 10,
    },
    SHIFT_TRADEOFF: {
        "truth": {"family": "gamma", "theta": [4.0, 1.0]},
        "shifts": [0.0, 0.5, 1.0, 1.5, 2.0],
    },
}

EXP_CONFIDENCE = 0.99
GRID_CONFIDENCE = 0.95
CAUCHY_BAND = 0.1


@dataclass
class ExperimentSpec(object):
    kind: str
    datasets: list = field(default_factory=list)
    families: list = field(default_factory=list)
    methods: list = field(default_factory=list)
    estimators: list = field(default_factory=list)
    sample_sizes: list = field(default_factory=list)
    replications: int = 1
    seed: int = 0
    workers: int = 1
    record_timings: bool = False
    truth: Optional[dict] = None
    shifts: list = field(default_factory=list)
    grid_points: Optional[list] = None
    grids: dict = field(default_factory=dict)
    estimator_cfg: EstimatorConfig = field(default_factory=EstimatorConfig)
    fit_cfg: FitConfig = field(default_factory=FitConfig)
    c_lower_bound: float = 0.0
    median_q: float = 0.5
    base_dir: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(
                "Unknown experiment {!r}. Available: {}".format(self.kind, ", ".join(KINDS))
            )
        if int(self.replications) < 1:
            raise ConfigError("replications must be at least 1, got {!r}".format(self.replications))
        if any(int(n) < 1 for n in self.sample_sizes):
            raise ConfigError("sample sizes must be positive, got {!r}".format(self.sample_sizes))
        unknown = [name for name in self.families if name not in FAMILIES]
        unknown += [name for name in self.grids if name not in FAMILIES]
        if unknown:
            raise ConfigError("Unknown families: {}".format(", ".join(unknown)))
        unknown = [name for name in self.estimators if name not in ESTIMATORS]
        if unknown:
            raise ConfigError("Unknown estimators: {}".format(", ".join(unknown)))
        try:
            for kind in self.methods:
                self.method(kind)
            for name in self.grids:
                family = get_family(name)
                for start in self.fit_config(family).starts(family):
                    if len(start) != family.param_count:
                        raise ConfigError(
                            "start {} of {} needs {} values".format(tuple(start), name, family.param_count)
                        )
            if self.truth is not None:
                self.truth_family()
            for point in self.grid_points or []:
                get_family(point["family"]).validate(point["theta"])
        except (MinshiftException, KeyError, TypeError) as exc:
            raise ConfigError("Invalid {} experiment: {}".format(self.kind, exc))

    def method(self, kind):
        return ShiftMethod(
            kind=kind,
            estimator_cfg=self.estimator_cfg,
            c_lower_bound=self.c_lower_bound,
            median_q=self.median_q,
        )

    def fit_config(self, family):
        """ fit_cfg, with the grid configured for this family if any. """
        grid = self.grids.get(family.name)
        if grid is None:
            return self.fit_cfg
        return dataclasses.replace(self.fit_cfg, grid=grid)

    def truth_family(self):
        family = get_family(self.truth["family"])
        return family, family.validate(self.truth["theta"])


def make_spec(kind, **overrides):
    """ ExperimentSpec of `kind` with its default protocol, updated by overrides. """
    if kind not in KINDS:
        raise ConfigError("Unknown experiment {!r}. Available: {}".format(kind, ", ".join(KINDS)))
    settings = dict(DEFAULTS[kind])
    settings.update(overrides)
    return ExperimentSpec(kind=kind, **settings)


def _run_cells(cells, spec, info_streamer):
    pipeline = CellsPipeline(cells, name=spec.kind, workers=spec.workers)
    if info_streamer is not None:
        pipeline.set_info_streamer(info_streamer)
    return pipeline.run()


@contextmanager
def _wall_time(cell):
    began = time.perf_counter()
    yield
    elapsed = time.perf_counter() - began
    for row in cell.rows:
        row["wall_time"] = elapsed


def _fit_cell(keys, method, family, sample, cfg, seed, info_streamer):
    result = fit(method, family, sample, cfg, seed=seed, info_streamer=info_streamer)
    row = dict(keys)
    row.update(
        theta=format_theta(result.theta_hat),
        c_hat=result.c_hat,
        loglik=result.loglik,
        aic=result.aic,
        converged=result.converged,
        n_evals=result.n_evals,
    )
    return [row]


FIT_COLUMNS = ["theta", "c_hat", "loglik", "aic", "converged", "n_evals"]


def _fit_cells(spec, jobs, info_streamer):
    """ jobs: (keys, seed keys, family, sample) tuples, fitted with every method of the spec. """
    cells = []
    for keys, seed_keys, family, sample in jobs:
        for m_idx, kind in enumerate(spec.methods):
            cell_keys = dict(keys, family=family.name, method=kind)
            fct = partial(
                _fit_cell,
                cell_keys,
                spec.method(kind),
                family,
                sample,
                spec.fit_config(family),
                child_seed(spec.seed, *(seed_keys + (m_idx,))),
                info_streamer,
            )
            cell = Cell(fct, keys=cell_keys)
            if spec.record_timings:
                cell.add_context_manager(_wall_time)
            cells.append(cell)
    return cells


def run_method_compare(spec, info_streamer=None):
    """ AIC of every (family, method) on `replications` seeded subsamples of each size (the whole dataset once when
    the size reaches its length).
    Aggregates per (method, n): 5% and 90% AIC quantiles, best AIC, wins (trials where the method reached the best
    AIC), divergence rate, and the mean wall time when timings are recorded.
    """
    jobs = []
    for d_idx, (dataset_id, dataset) in enumerate(load_datasets(spec.datasets, spec.seed, spec.base_dir)):
        for n in spec.sample_sizes:
            whole = n >= dataset.n
            for trial in range(1 if whole else spec.replications):
                if whole:
                    sub = dataset
                else:
                    rng = np.random.default_rng(child_seed(spec.seed, d_idx, n, trial))
                    sub = dataset.subsample(n, rng)
                for f_idx, name in enumerate(spec.families):
                    keys = {"dataset": dataset_id, "n": sub.n, "trial": trial}
                    jobs.append((keys, (d_idx, n, trial, f_idx), get_family(name), sub))
    rows = _run_cells(_fit_cells(spec, jobs, info_streamer), spec, info_streamer)

    columns = ["dataset", "n", "trial", "family", "method"] + FIT_COLUMNS
    aggregate_columns = ["method", "n", "aic_q05", "aic_q90", "best_aic", "wins", "fits", "divergence_rate"]
    if spec.record_timings:
        columns.append("wall_time")
        aggregate_columns.append("mean_wall_time")
    columns.append("error")

    # best AIC of each method in each trial, over the families
    trial_best = {}
    for row in rows:
        if row.get("error") or not row["converged"]:
            continue
        key = (row["dataset"], row["n"], row["trial"], row["method"])
        trial_best[key] = min(trial_best.get(key, np.inf), row["aic"])
    wins = {}
    for trial_key, entries in itertools.groupby(sorted(trial_best.items()), key=lambda item: item[0][:3]):
        entries = list(entries)
        best = min(aic for _, aic in entries)
        for (_, n, _, method), aic in entries:
            if aic == best:
                wins[(method, n)] = wins.get((method, n), 0) + 1

    aggregates = []
    groups = group_rows(rows, ["method", "n"])
    for method in spec.methods:
        for n in sorted({key[1] for key in groups}):
            group = groups.get((method, n))
            if not group:
                continue
            aics = [row["aic"] for row in group if row["converged"]]
            aggregate = {
                "method": method,
                "n": n,
                "aic_q05": quantile(aics, 0.05),
                "aic_q90": quantile(aics, 0.90),
                "best_aic": min(aics) if aics else np.inf,
                "wins": wins.get((method, n), 0),
                "fits": len(group),
                "divergence_rate": 1.0 - len(aics) / float(len(group)),
            }
            if spec.record_timings:
                aggregate["mean_wall_time"] = float(np.mean([row["wall_time"] for row in group]))
            aggregates.append(aggregate)
    return ExperimentReport(spec.kind, columns, rows, aggregate_columns, aggregates)


def run_multi_dataset(spec, info_streamer=None):
    """ For each dataset and method: the best log-likelihood over the families, and its difference with the best
    log-likelihood of all methods on that dataset (0 for the winner, negative otherwise).
    Diverged fits do not take part in the maxima and are counted instead.
    """
    datasets = load_datasets(spec.datasets, spec.seed, spec.base_dir)
    if len(datasets) < 2:
        raise ConfigError("A multi-dataset experiment needs at least 2 datasets, got {}".format(len(datasets)))
    jobs = [
        ({"dataset": dataset_id}, (d_idx, f_idx), get_family(name), dataset)
        for d_idx, (dataset_id, dataset) in enumerate(datasets)
        for f_idx, name in enumerate(spec.families)
    ]
    fit_rows = _run_cells(_fit_cells(spec, jobs, info_streamer), spec, info_streamer)

    rows = []
    for dataset_id, _ in datasets:
        dataset_rows = []
        for method in spec.methods:
            fits = [row for row in fit_rows if row["dataset"] == dataset_id and row["method"] == method]
            converged = [row for row in fits if not row.get("error") and row["converged"]]
            best = max(converged, key=lambda row: row["loglik"]) if converged else None
            dataset_rows.append(
                {
                    "dataset": dataset_id,
                    "method": method,
                    "best_family": best["family"] if best else None,
                    "best_loglik": best["loglik"] if best else -np.inf,
                    "fits": len(fits),
                    "diverged": sum(1 for row in fits if not row.get("error") and not row["converged"]),
                    "errors": sum(1 for row in fits if row.get("error")),
                }
            )
        finite_best = [row["best_loglik"] for row in dataset_rows if np.isfinite(row["best_loglik"])]
        overall = max(finite_best) if finite_best else np.nan
        for row in dataset_rows:
            row["loglik_diff"] = row["best_loglik"] - overall
        rows.extend(dataset_rows)

    aggregates = []
    for method in spec.methods:
        method_rows = [row for row in rows if row["method"] == method]
        diffs = [row["loglik_diff"] for row in method_rows]
        fits = sum(row["fits"] for row in method_rows)
        diverged = sum(row["diverged"] for row in method_rows)
        aggregates.append(
            {
                "method": method,
                "diff_median": quantile(diffs, 0.5),
                "diff_q25": quantile(diffs, 0.25),
                "diff_q75": quantile(diffs, 0.75),
                "diff_min": quantile(diffs, 0.0),
                "datasets_best": sum(1 for diff in diffs if diff == 0),
                "diverged": diverged,
                "divergence_rate": diverged / float(fits) if fits else np.nan,
            }
        )
    columns = ["dataset", "method", "best_family", "best_loglik", "loglik_diff", "fits", "diverged", "errors"]
    aggregate_columns = [
        "method", "diff_median", "diff_q25", "diff_q75", "diff_min", "datasets_best", "diverged", "divergence_rate"
    ]
    return ExperimentReport(spec.kind, columns, rows, aggregate_columns, aggregates)


def _estimates(spec, sample):
    """ (estimator, estimate or None, error message or None) for every estimator of the spec. """
    for name in spec.estimators:
        try:
            yield name, estimate(name, sample, spec.estimator_cfg), None
        except MinshiftException as exc:
            yield name, None, "{}: {}".format(type(exc).__name__, exc)


def _exp_cell(spec, truth, theta, fit_family, n, replication):
    seed = child_seed(spec.seed, n, replication)
    sample = draw_sample(truth, theta, n, seed)
    loglik_true = log_likelihood(truth, theta, sample)
    rows = []
    for name, c_hat, error in _estimates(spec, sample):
        row = {"n": n, "replication": replication, "estimator": name, "c_hat": c_hat, "error": error}
        if error is None:
            result = fit(
                ShiftMethod(BASELINE), fit_family, sample.shifted(c_hat), spec.fit_config(fit_family), seed=seed
            )
            distances = distance_report(c_hat, truth, theta, n, sample.min)
            row.update(
                loglik_shifted=result.loglik,
                loglik_true=loglik_true,
                loglik_diff=result.loglik - loglik_true if result.converged else np.nan,
                signed_rel_dist_q05=distances.signed_rel_dist_q05,
                converged=result.converged,
            )
        rows.append(row)
    return rows


def run_exp_worstcase(spec, info_streamer=None):
    """ Shift a sample of the truth by each estimate, fit the family again (the truth's by default) and compare with
    the log-likelihood of the truth on the original sample: positive differences mean the shift did not hurt.
    Aggregates per (estimator, n): means of the difference and of the signed distance to the 5% quantile of the
    sample minimum, with Student-t half-widths (99%).
    """
    truth, theta = spec.truth_family()
    fit_family = get_family(spec.families[0]) if spec.families else truth
    cells = [
        Cell(
            partial(_exp_cell, spec, truth, theta, fit_family, n, replication),
            keys={"n": n, "replication": replication},
        )
        for n in spec.sample_sizes
        for replication in range(spec.replications)
    ]
    rows = _run_cells(cells, spec, info_streamer)

    aggregates = []
    groups = group_rows(rows, ["estimator", "n"])
    for name in spec.estimators:
        for n in spec.sample_sizes:
            group = groups.get((name, n), [])
            diff_mean, diff_hw = mean_half_width([row["loglik_diff"] for row in group], EXP_CONFIDENCE)
            dist_mean, dist_hw = mean_half_width([row["signed_rel_dist_q05"] for row in group], EXP_CONFIDENCE)
            aggregates.append(
                {
                    "estimator": name,
                    "n": n,
                    "q05_target": baseline_q05(truth, theta, n),
                    "mean_loglik_diff": diff_mean,
                    "loglik_diff_hw": diff_hw,
                    "mean_signed_dist_q05": dist_mean,
                    "signed_dist_hw": dist_hw,
                    "replications": len(group),
                    "divergence_rate": (
                        sum(1 for row in group if not row["converged"]) / float(len(group)) if group else np.nan
                    ),
                }
            )
    columns = [
        "n", "replication", "estimator", "c_hat", "loglik_shifted", "loglik_true", "loglik_diff",
        "signed_rel_dist_q05", "converged", "error",
    ]
    aggregate_columns = [
        "estimator", "n", "q05_target", "mean_loglik_diff", "loglik_diff_hw", "mean_signed_dist_q05",
        "signed_dist_hw", "replications", "divergence_rate",
    ]
    return ExperimentReport(spec.kind, columns, rows, aggregate_columns, aggregates)


def _cauchy_cell(spec, truth, theta, n, replication):
    sample = draw_sample(truth, theta, n, child_seed(spec.seed, n, replication))
    rows = []
    for name, c_hat, error in _estimates(spec, sample):
        rows.append(
            {
                "n": n,
                "replication": replication,
                "estimator": name,
                "c_hat": c_hat,
                "F_at_c": truth.cdf(c_hat, theta) if error is None else None,
                "error": error,
            }
        )
    return rows


def run_cauchy_worstcase(spec, info_streamer=None):
    """ F(c) of the estimates on samples of the truth (Cauchy(0, 1) by default).
    Aggregates per (estimator, n): mean, standard deviation, variance and a band of 0.1 standard deviation of F(c).
    """
    truth, theta = spec.truth_family()
    cells = [
        Cell(partial(_cauchy_cell, spec, truth, theta, n, replication), keys={"n": n, "replication": replication})
        for n in spec.sample_sizes
        for replication in range(spec.replications)
    ]
    rows = _run_cells(cells, spec, info_streamer)

    aggregates = []
    groups = group_rows(rows, ["estimator", "n"])
    for name in spec.estimators:
        for n in spec.sample_sizes:
            group = groups.get((name, n), [])
            values = np.array([row["F_at_c"] for row in group], dtype=float)
            sd = float(values.std(ddof=1)) if values.size > 1 else np.nan
            aggregates.append(
                {
                    "estimator": name,
                    "n": n,
                    "mean_F": float(values.mean()) if values.size else np.nan,
                    "sd_F": sd,
                    "var_F": sd ** 2,
                    "band": CAUCHY_BAND * sd,
                    "all_finite": bool(np.all(np.isfinite([row["c_hat"] for row in group]))),
                    "replications": len(group),
                }
            )
    columns = ["n", "replication", "estimator", "c_hat", "F_at_c", "error"]
    aggregate_columns = ["estimator", "n", "mean_F", "sd_F", "var_F", "band", "all_finite", "replications"]
    return ExperimentReport(spec.kind, columns, rows, aggregate_columns, aggregates)


def default_generator_grid():
    """ Generators of the synthetic-grid study: generalized gamma and exponentiated Weibull of many shapes. """
    scales = [0.5, 2.0, 10.0, 50.0]
    points = [
        {"family": "gengamma", "theta": [scale, d, p]}
        for scale in scales
        for d in [0.5, 1.0, 2.0, 3.0, 5.0, 10.0]
        for p in [0.5, 1.0, 2.0, 4.0, 8.0]
    ]
    points += [
        {"family": "expweibull", "theta": [shape, scale, alpha]}
        for shape in [0.5, 1.0, 2.0, 3.0, 5.0, 10.0]
        for scale in scales
        for alpha in [0.2, 0.5, 1.0, 2.0, 5.0, 10.0]
    ]
    return points


DISTANCE_COLUMNS = ["F_at_c", "rel_dist_to_min", "signed_rel_dist_q05", "signed_rel_dist_q01"]


def _grid_cell(spec, point_idx, point):
    family = get_family(point["family"])
    theta = family.validate(point["theta"])
    keys = {"point": point_idx, "family": family.name, "theta": format_theta(theta)}
    normalizer = family.reference_scale(theta)
    samples = {}
    try:
        if not np.isfinite(normalizer) or normalizer == 0:
            raise ValueError("normalizer {!r}".format(normalizer))
        for n in spec.sample_sizes:
            for replication in range(spec.replications):
                seed = child_seed(spec.seed, point_idx, n, replication)
                samples[(n, replication)] = draw_sample(family, theta, n, seed)
    except (MinshiftException, ValueError) as exc:
        logger.warning("Discarding grid point %s %s: %s", family.name, keys["theta"], exc)
        return [dict(keys, status="discarded", error=str(exc))]

    rows = []
    for (n, replication), sample in sorted(samples.items()):
        for name, c_hat, error in _estimates(spec, sample):
            row = dict(keys, status="ok", n=n, replication=replication, estimator=name, c_hat=c_hat, error=error)
            if error is None:
                distances = distance_report(c_hat, family, theta, n, sample.min, pop_mean=normalizer)
                row.update(distances._asdict())
            rows.append(row)
    return rows


def run_synthetic_grid(spec, info_streamer=None):
    """ The estimators on replicated samples of every generator of the grid.
    Grid points whose samples or normalizer are not finite are discarded and counted.
    Aggregates per (estimator, n): means (with 95% Student-t half-widths) of F(c), of the distance to the sample
    minimum and of the signed distances to the 1% and 5% quantiles of the minimum, all distances divided by the
    populational mean.
    """
    points = spec.grid_points if spec.grid_points is not None else default_generator_grid()
    cells = [
        Cell(partial(_grid_cell, spec, point_idx, point), keys={"point": point_idx, "family": point["family"]})
        for point_idx, point in enumerate(points)
    ]
    rows = _run_cells(cells, spec, info_streamer)
    discarded = len({row["point"] for row in rows if row.get("status") != "ok"})
    surviving = len(points) - discarded

    aggregates = []
    groups = group_rows([row for row in rows if row.get("status") == "ok"], ["estimator", "n"])
    for name in spec.estimators:
        for n in spec.sample_sizes:
            group = groups.get((name, n), [])
            aggregate = {"estimator": name, "n": n, "count": len(group)}
            for column in DISTANCE_COLUMNS:
                mean, hw = mean_half_width([row[column] for row in group], GRID_CONFIDENCE)
                aggregate["mean_" + column] = mean
                aggregate[column + "_hw"] = hw
            aggregate.update(surviving_points=surviving, discarded_points=discarded)
            aggregates.append(aggregate)
    columns = ["point", "family", "theta", "status", "n", "replication", "estimator", "c_hat"]
    columns += DISTANCE_COLUMNS + ["error"]
    aggregate_columns = ["estimator", "n", "count"]
    for column in DISTANCE_COLUMNS:
        aggregate_columns += ["mean_" + column, column + "_hw"]
    aggregate_columns += ["surviving_points", "discarded_points"]
    return ExperimentReport(spec.kind, columns, rows, aggregate_columns, aggregates)


def cdf_area(first, theta1, second, theta2):
    """ L1 distance between two cdfs supported on [0, inf). """
    upper = max(first.quantile(1 - 1e-10, theta1), second.quantile(1 - 1e-10, theta2))
    breaks = sorted({first.quantile(q, theta1) for q in (0.1, 0.5, 0.9)} | {second.quantile(0.5, theta2)})
    breaks = [point for point in breaks if 0 < point < upper]

    def gap(y):
        return abs(first.cdf(y, theta1) - second.cdf(y, theta2))

    area, _ = integrate.quad(gap, 0.0, upper, points=breaks or None, limit=200)
    return area


def _tradeoff_cell(spec, family, theta1, c):
    truncated = TruncatedFamily(family, c)
    truncated.log_lambda(theta1)
    ideal = expected_log_likelihood(truncated, theta1, truncated, theta1)

    def objective(x):
        if not family.is_valid(x):
            return np.inf
        value = expected_log_likelihood(family, x, truncated, theta1)
        return -value if np.isfinite(value) else np.inf

    cfg = spec.fit_config(family)
    starts = cfg.grid if cfg.grid is not None else [theta1]
    best = None
    for start in starts:
        with np.errstate(all="ignore"):
            res = optimize.minimize(
                objective,
                np.asarray(start, dtype=float),
                method="Nelder-Mead",
                options={"maxiter": cfg.max_iters, "xatol": 1e-6, "fatol": 1e-9, "adaptive": True},
            )
        if np.isfinite(res.fun) and (best is None or res.fun < best.fun):
            best = res
    if best is None:
        raise FitException("No start gives a finite expected log-likelihood at c={!r}".format(c))
    theta2 = ParamVector(best.x)
    return [
        {
            "c": c,
            "F_truth_at_c": family.cdf(c, theta1),
            "theta": format_theta(theta2),
            "expected_loglik": -best.fun,
            "ideal_expected_loglik": ideal,
            "area": cdf_area(truncated, theta1, family, theta2),
            "converged": bool(best.success),
        }
    ]


def run_shift_tradeoff(spec, info_streamer=None):
    """ For each shift c: the same-family distribution closest (in expected log-likelihood) to the truth truncated at
    c and moved to the origin, and the L1 area between its cdf and the truncated truth's.
    Values are in the coordinates of the shifted variable y = x - c.
    """
    family, theta1 = spec.truth_family()
    cells = [
        Cell(partial(_tradeoff_cell, spec, family, theta1, float(c)), keys={"c": float(c)})
        for c in spec.shifts
    ]
    rows = _run_cells(cells, spec, info_streamer)
    columns = [
        "c", "F_truth_at_c", "theta", "expected_loglik", "ideal_expected_loglik", "area", "converged", "error"
    ]
    return ExperimentReport(spec.kind, columns, rows)


RUNNERS = {
    METHOD_COMPARE: run_method_compare,
    MULTI_DATASET: run_multi_dataset,
    EXP_WORSTCASE: run_exp_worstcase,
    CAUCHY_WORSTCASE: run_cauchy_worstcase,
    SYNTHETIC_GRID: run_synthetic_grid,
    SHIFT_TRADEOFF: run_shift_tradeoff,
}


def run_experiment(spec, info_streamer=None):
    return RUNNERS[spec.kind](spec, info_streamer)
