# -*- coding: utf-8 -*-

"""
Data ingestion: CSV columns and synthetic datasets.

Datasets of an experiment are described by dicts:
    * {"path": "winequality-red.csv", "column": "alcohol", "delimiter": ";"}  (column and delimiter optional)
    * {"generator": "synthetic", "count": 37, "size": 200}
"""

import csv
import os

import numpy as np

from .data_structs import Sample
from .exceptions import ConfigError, EmptyFileError, ParseError
from .streamers import logger

SYNTHETIC = "synthetic"


def child_seed(master, *keys):
    """ Seed of the stream identified by keys (non-negative integers) under the master seed.
    Independent of the order in which streams are requested.
    """
    sequence = np.random.SeedSequence(int(master), spawn_key=tuple(int(key) for key in keys))
    return int(sequence.generate_state(1)[0])


def _to_float(field):
    value = float(field)
    if not np.isfinite(value):
        raise ValueError("non-finite value {!r}".format(field))
    return value


def _is_numeric_row(fields):
    try:
        [_to_float(field) for field in fields]
    except ValueError:
        return False
    return True


def _column_index(header, column, path):
    if column is None:
        if header is not None and len(header) > 1:
            raise ParseError(
                "{}: several columns ({}), pick one".format(path, ", ".join(header)), line=1
            )
        return 0
    if isinstance(column, int):
        return column
    if header is None or column not in header:
        raise ParseError("{}: no column {!r}".format(path, column), line=1)
    return header.index(column)


def load_csv(path, column=None, delimiter=None):
    """ Read one numeric column of a CSV file. Row order is kept.

    The first line is a header if it does not parse as numbers. '.' is the decimal separator. The delimiter defaults
    to ';' if the first line holds one, ',' otherwise.
    Args:
        path (str)
        column (str or int): header name or index, required if the file has several columns.
        delimiter (str)
    Returns:
        Sample
    Raises:
        ParseError: malformed value, with its line number.
        EmptyFileError: no value at all.
        OSError: unreadable file.
    """
    with open(path, newline="") as csv_file:
        lines = csv_file.read().splitlines()
    numbered = [(number, line) for number, line in enumerate(lines, 1) if line.strip()]
    if not numbered:
        raise EmptyFileError("{} is empty".format(path))
    if delimiter is None:
        delimiter = ";" if ";" in numbered[0][1] else ","

    rows = [
        (number, [field.strip() for field in fields])
        for (number, _), fields in zip(
            numbered, csv.reader([line for _, line in numbered], delimiter=delimiter)
        )
    ]
    header = None
    if not _is_numeric_row(rows[0][1]):
        header = rows[0][1]
        rows = rows[1:]
    index = _column_index(header, column, path)

    values = []
    for number, fields in rows:
        if index >= len(fields):
            raise ParseError("missing column {}".format(index), line=number)
        try:
            values.append(_to_float(fields[index]))
        except ValueError:
            raise ParseError("not a number: {!r}".format(fields[index]), line=number)
    if not values:
        raise EmptyFileError("{} holds no value".format(path))
    return Sample(values)


def synthetic_datasets(count, size, seed):
    """ Datasets far from the origin with widely varying location and spread.

    Each one is location + spread * Z, with location log-uniform in [1, 1e4], coefficient of variation log-uniform in
    [0.01, 0.5] and Z a two-component mixture of standardized gammas (the second component moved up by one unit).
    Returns:
        list of (dataset id, Sample)
    """
    datasets = []
    for i in range(count):
        rng = np.random.default_rng(child_seed(seed, i))
        location = 10.0 ** rng.uniform(0.0, 4.0)
        spread = location * np.exp(rng.uniform(np.log(0.01), np.log(0.5)))
        weight = rng.uniform(0.5, 0.9)
        shapes = rng.uniform(2.0, 10.0, size=2)
        first = rng.random(size) < weight
        z = np.where(
            first,
            rng.gamma(shapes[0], size=size) / np.sqrt(shapes[0]),
            1.0 + rng.gamma(shapes[1], size=size) / np.sqrt(shapes[1]),
        )
        datasets.append(("synthetic-{:02d}".format(i), Sample(location + spread * z)))
    return datasets


def load_datasets(descriptors, seed, base_dir=None):
    """ Resolve dataset descriptors (see module doc). Relative paths are taken from base_dir.
    Returns:
        list of (dataset id, Sample)
    """
    datasets = []
    for position, descriptor in enumerate(descriptors):
        if not isinstance(descriptor, dict):
            descriptor = {"path": descriptor}
        if descriptor.get("generator") == SYNTHETIC:
            unknown = set(descriptor) - {"generator", "count", "size"}
            if unknown:
                raise ConfigError("Unknown dataset keys: {}".format(", ".join(sorted(unknown))))
            generated = synthetic_datasets(
                int(descriptor.get("count", 37)),
                int(descriptor.get("size", 200)),
                child_seed(seed, position),
            )
            datasets.extend(generated)
        elif "path" in descriptor:
            unknown = set(descriptor) - {"path", "column", "delimiter"}
            if unknown:
                raise ConfigError("Unknown dataset keys: {}".format(", ".join(sorted(unknown))))
            path = descriptor["path"]
            if base_dir and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            column = descriptor.get("column")
            sample = load_csv(path, column=column, delimiter=descriptor.get("delimiter"))
            name = os.path.splitext(os.path.basename(path))[0]
            dataset_id = "{}:{}".format(name, column) if column is not None else name
            logger.info("Loaded %s: %r", dataset_id, sample)
            datasets.append((dataset_id, sample))
        else:
            raise ConfigError(
                "A dataset needs a path or generator: {}, got {!r}".format(SYNTHETIC, descriptor)
            )
    return datasets
