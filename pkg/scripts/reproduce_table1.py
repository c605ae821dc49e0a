#!/usr/bin/env python3
"""Reproduce the dip-minimum table from the double error-function model.

For n = 1 and |a| in {1, 2, 4, 6, 8, 10, 15, 20}, locate the minimum of the
smoothed Stokes multiplier over theta and emit (|a|, theta0/pi, S1_min) as
CSV.  Run with --check to compare every row against the reference values at
5e-7 absolute tolerance.

Usage:
    python3 scripts/reproduce_table1.py [--out table1.csv] [--check]
"""
import sys

from zetastokes.cli import main

if __name__ == "__main__":
    sys.exit(main(["table1", *sys.argv[1:]]))
