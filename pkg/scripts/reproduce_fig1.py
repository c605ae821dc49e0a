#!/usr/bin/env python3
"""Reproduce the three Stokes-multiplier sweeps across the positive
imaginary axis.

Each sweep extracts the exact multiplier S_n(theta) from the exponentially
improved expansion at 41 points of theta/pi in [0.3, 0.7] and compares it
with the error-function smoothing model:

    fig1a: n = 1, |a| = 6, s = 3
    fig1b: n = 1, |a| = 8, s = 2 + i/2
    fig1c: n = 2, |a| = 6, s = 2   (second, exponentially smaller scale)

Writes one CSV per sweep into the chosen output directory (default cwd).

Usage:
    python3 scripts/reproduce_fig1.py [outdir] [--digits N]
"""
import sys
from pathlib import Path

from zetastokes.cli import main

if __name__ == "__main__":
    args = [a for a in sys.argv[1:] if not a.startswith("-")]
    extra = [a for a in sys.argv[1:] if a.startswith("-")]
    outdir = Path(args[0]) if args else Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    code = 0
    for name in ("fig1a", "fig1b", "fig1c"):
        out = outdir / f"{name}.csv"
        rc = main(["sweep", "--reproduce", name, "--out", str(out), *extra])
        print(f"{name}: exit {rc} -> {out}", file=sys.stderr)
        code = max(code, rc)
    sys.exit(code)
