# -*- coding: utf-8 -*-

"""
Command line interface: `minshift <command> ...`.

Exit codes: 0 on success, 2 on invalid input (parse, empty file, configuration, invalid parameters), 3 on IO errors.
"""

import argparse
import json
import logging
import sys

import numpy as np

from .config import load_config
from .datasets import load_csv
from .distributions import FAMILIES, get_family
from .estimators import EstimatorConfig, estimate_all
from .exceptions import MinshiftException
from .fitting import KINDS as METHODS
from .fitting import fit
from .harness import (
    CAUCHY_WORSTCASE,
    EXP_WORSTCASE,
    METHOD_COMPARE,
    MULTI_DATASET,
    SHIFT_TRADEOFF,
    SYNTHETIC_GRID,
    run_experiment,
)
from .order_stats import MinDistribution, min_quantile
from .reports import FORMATS, emit_report
from .streamers import HumanReadableLogger, logger

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_IO_ERROR = 3

EXPERIMENT_COMMANDS = {
    "compare": METHOD_COMPARE,
    "multi": MULTI_DATASET,
    "worstcase-exp": EXP_WORSTCASE,
    "worstcase-cauchy": CAUCHY_WORSTCASE,
    "grid": SYNTHETIC_GRID,
    "tradeoff": SHIFT_TRADEOFF,
}


def _jsonable(value):
    """ JSON has no inf or nan: they are written as strings. """
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (float, np.floating)):
        return float(value) if np.isfinite(value) else repr(float(value))
    return value


def _print_json(document):
    print(json.dumps(_jsonable(document), indent=1))


def _parse_theta(text):
    try:
        return [float(value) for value in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("theta must be comma separated numbers, got {!r}".format(text))


def _add_data_arguments(parser):
    parser.add_argument("--data", required=True, help="CSV file, one numeric column (see --column).")
    parser.add_argument("--column", default=None, help="Column name, required if the file has several columns.")
    parser.add_argument("--delimiter", default=None, help="CSV delimiter. Default: ';' if present, else ','.")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="minshift", description="Fit semi-infinite families when the populational minimum is unknown."
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress (DEBUG level).")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    estimate_parser = commands.add_parser("estimate", help="Print c1..c4 and the sample statistics as JSON.")
    _add_data_arguments(estimate_parser)
    estimate_parser.add_argument("--k", type=float, default=EstimatorConfig.k, help="Logarithm base of c1.")
    estimate_parser.add_argument("--nu", type=float, default=EstimatorConfig.nu, help="Tail probability of c4.")

    minq_parser = commands.add_parser("minq", help="Print a quantile of the sample minimum.")
    minq_parser.add_argument("--family", required=True, choices=sorted(FAMILIES))
    minq_parser.add_argument("--theta", required=True, type=_parse_theta, help="Parameters, e.g. 2,1")
    minq_parser.add_argument("--n", required=True, type=int, help="Sample size.")
    minq_parser.add_argument("--q", required=True, type=float, help="Probability in (0, 1).")

    fit_parser = commands.add_parser("fit", help="Fit one family with one method, print the FitResult as JSON.")
    _add_data_arguments(fit_parser)
    fit_parser.add_argument("--family", required=True, choices=sorted(FAMILIES))
    fit_parser.add_argument("--method", required=True, choices=METHODS)
    fit_parser.add_argument("--config", default=None, help="YAML configuration (fit, method, estimators sections).")
    fit_parser.add_argument("--seed", type=int, default=0)

    for command, kind in EXPERIMENT_COMMANDS.items():
        experiment_parser = commands.add_parser(command, help="Run the {} experiment.".format(kind))
        experiment_parser.add_argument("--config", default=None, help="YAML configuration.")
        experiment_parser.add_argument("--seed", type=int, default=None, help="Master seed (overrides the config).")
        experiment_parser.add_argument("--out", default=None, help="Report path. Default: <experiment>.<format>")
        experiment_parser.add_argument("--format", default="csv", choices=FORMATS)
        experiment_parser.add_argument("--workers", type=int, default=None, help="Cells run in parallel.")
        experiment_parser.set_defaults(experiment=kind)
    return parser


def _estimate(args):
    sample = load_csv(args.data, column=args.column, delimiter=args.delimiter)
    _print_json(estimate_all(sample, EstimatorConfig(k=args.k, nu=args.nu)))


def _minq(args):
    family = get_family(args.family)
    print(repr(float(min_quantile(MinDistribution(family, args.theta, args.n), args.q))))


def _fit(args):
    config = load_config(args.config)
    sample = load_csv(args.data, column=args.column, delimiter=args.delimiter)
    result = fit(
        config.method(args.method),
        get_family(args.family),
        sample,
        config.fit_config(args.family),
        seed=args.seed,
        info_streamer=HumanReadableLogger(),
    )
    _print_json(result.to_dict())


def _experiment(args):
    spec = load_config(args.config).experiment_spec(args.experiment, seed=args.seed, workers=args.workers)
    report = run_experiment(spec, HumanReadableLogger())
    out = args.out or "{}.{}".format(spec.kind, args.format)
    emit_report(report, args.format, out)
    logger.info("Report written to %s", out)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handlers = {"estimate": _estimate, "minq": _minq, "fit": _fit}
    try:
        handlers.get(args.command, _experiment)(args)
    except MinshiftException as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_INVALID_INPUT
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_IO_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
