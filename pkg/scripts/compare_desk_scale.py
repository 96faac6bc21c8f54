#!/usr/bin/env python3
"""Desk-scale three-way comparison on sphere and Ackley at d=16.

Writes one CSV of summary rows per function and echoes them.  The
tolerances are set where all three optimizers have a defined
evaluations-to-tolerance mean under a 40,000-evaluation budget; see the
README for the measured ordering discussion.

Usage: python scripts/compare_desk_scale.py [outdir]
"""

import sys
from pathlib import Path

from batbench.cli import run_cli


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("comparison")
    outdir.mkdir(parents=True, exist_ok=True)
    for function, tol, name in (
        ("dejong", "100.0", "sphere_d16.csv"),
        ("ackley", "17.0", "ackley_d16.csv"),
    ):
        out = outdir / name
        code = run_cli([
            "compare", "--functions", function, "--dim", "16",
            "--algorithms", "bat,pso,ga", "--trials", "30",
            "--tolerance", tol, "--max-evals", "40000", "--seed", "0",
            "--output", str(out),
        ])
        if code:
            return code
        print(f"--- {out}")
        for line in out.read_text().splitlines():
            if not line.startswith("#"):
                print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
