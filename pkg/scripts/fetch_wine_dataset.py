# -*- coding: utf-8 -*-

"""
Download the red wine quality dataset used by the method-compare experiment.

    pip install minshift[fetch]
    python scripts/fetch_wine_dataset.py [--out data/winequality-red.csv] [--excerpt tests/data/winequality-red-50.csv]

The file is written as published: semicolon separated, quoted header, 1599 rows.
The excerpt keeps the first rows in the same format, for the offline tests.
"""

import argparse
import csv
import logging
import os

import pandas as pd

WINE_URL = "https://archive.ics.uci.edu/ml/machine-learning-databases/wine-quality/winequality-red.csv"
ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
DEFAULT_OUT = os.path.join(ROOT, "data", "winequality-red.csv")
DEFAULT_EXCERPT = os.path.join(ROOT, "tests", "data", "winequality-red-50.csv")
EXCERPT_ROWS = 50

logger = logging.getLogger("minshift")


def _write(frame, out):
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    frame.to_csv(out, sep=";", index=False, quoting=csv.QUOTE_NONNUMERIC)
    logger.info("Wrote %d rows to %s", len(frame), out)


def fetch(url=WINE_URL, out=DEFAULT_OUT, excerpt=DEFAULT_EXCERPT):
    frame = pd.read_csv(url, sep=";")
    if "alcohol" not in frame.columns:
        raise ValueError("No alcohol column in {}: {}".format(url, ", ".join(frame.columns)))
    _write(frame, out)
    if excerpt:
        _write(frame.head(EXCERPT_ROWS), excerpt)
    return out


def main():
    parser = argparse.ArgumentParser(description="Download the red wine quality dataset.")
    parser.add_argument("--url", default=WINE_URL)
    parser.add_argument("--out", default=DEFAULT_OUT)
    parser.add_argument("--excerpt", default=DEFAULT_EXCERPT, help="Where to write the first rows. Empty to skip.")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    fetch(args.url, args.out, args.excerpt)


if __name__ == "__main__":
    main()
