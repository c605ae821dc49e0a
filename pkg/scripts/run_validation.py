#!/usr/bin/env python3
"""Run the internal cross-validation suites and print the report.

Covers: expansion exactness against direct summation, the two reflection
identities, the terminant connection formula, Stokes-line smoothing, the
algebraically equivalent remainder forms, the overall prefactor, and a
scale-2 multiplier extraction.  Exits 4 if any check fails.

Usage:
    python3 scripts/run_validation.py [--digits N] [--json report.json]
"""
import sys

from zetastokes.cli import main

if __name__ == "__main__":
    sys.exit(main(["validate", *sys.argv[1:]]))
