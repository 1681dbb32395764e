# -*- coding: utf-8 -*-

"""
Experiment reports: long-format rows (one per fit / estimate) plus per-group aggregates.

Both tables are written in csv or json. The aggregates go to a sibling file, "<name>.aggregates.<ext>".
Cells are rendered the same way in both formats: floats with repr (inf, -inf and nan spelled out), booleans as
true/false, missing values as empty strings. Identical reports give byte-identical files.
"""

import csv
import json
import os
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import stats

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)


@dataclass
class ExperimentReport(object):
    kind: str
    columns: List[str]
    rows: List[dict] = field(default_factory=list)
    aggregate_columns: List[str] = field(default_factory=list)
    aggregates: List[dict] = field(default_factory=list)


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(item) for item in value)
    return str(value)


def format_theta(theta):
    return " ".join(repr(float(value)) for value in theta)


def _formatted(rows, columns):
    return [[format_value(row.get(column)) for column in columns] for row in rows]


def _write_csv(path, columns, rows):
    with open(path, "w", newline="") as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(_formatted(rows, columns))


def _write_json(path, kind, columns, rows):
    document = {
        "kind": kind,
        "columns": columns,
        "rows": [dict(zip(columns, cells)) for cells in _formatted(rows, columns)],
    }
    with open(path, "w") as out:
        json.dump(document, out, indent=1)
        out.write("\n")


def aggregates_path(path):
    root, ext = os.path.splitext(path)
    return "{}.aggregates{}".format(root, ext)


def emit_report(report, format, path):
    """ Write report.rows to path and report.aggregates next to it.
    Raises:
        ValueError: unknown format.
        OSError: unwritable path.
    """
    if format not in FORMATS:
        raise ValueError("Unknown format {!r}. Available: {}".format(format, ", ".join(FORMATS)))
    tables = [(path, report.columns, report.rows)]
    if report.aggregate_columns:
        tables.append((aggregates_path(path), report.aggregate_columns, report.aggregates))
    for table_path, columns, rows in tables:
        if format == CSV:
            _write_csv(table_path, columns, rows)
        else:
            _write_json(table_path, report.kind, columns, rows)


def _numbers(values):
    values = np.asarray([value for value in values if value is not None], dtype=float)
    return values[~np.isnan(values)]


def finite(values):
    values = _numbers(values)
    return values[np.isfinite(values)]


def quantile(values, q):
    """ Linear-interpolation quantile, nan when there is no value.
    Infinite values (diverged fits) are kept as extremes: next to one, the nearest order statistic is returned.
    """
    values = np.sort(_numbers(values))
    if values.size == 0:
        return np.nan
    position = q * (values.size - 1)
    low, high = int(np.floor(position)), int(np.ceil(position))
    if np.isfinite(values[low]) and np.isfinite(values[high]):
        return float(values[low] + (values[high] - values[low]) * (position - low))
    return float(values[low] if position - low < 0.5 else values[high])


def mean_half_width(values, confidence):
    """ Mean of the finite values and the Student-t half-width of its confidence interval.
    The half-width is t_{(1+confidence)/2, r-1} * s / sqrt(r), nan below two values.
    """
    values = finite(values)
    if values.size == 0:
        return np.nan, np.nan
    mean = float(values.mean())
    if values.size < 2:
        return mean, np.nan
    t_value = stats.t.ppf(0.5 + confidence / 2.0, df=values.size - 1)
    return mean, float(t_value * values.std(ddof=1) / np.sqrt(values.size))


def group_rows(rows, keys):
    """ {key tuple: rows}, in order of first appearance, skipping error rows. """
    groups = {}
    for row in rows:
        if row.get("error"):
            continue
        groups.setdefault(tuple(row[key] for key in keys), []).append(row)
    return groups
