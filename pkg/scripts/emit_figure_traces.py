#!/usr/bin/env python3
"""Emit the two showcase trajectory files for external plotting.

  1. 25 bats, 20 iterations on the printed Rosenbrock variant
     (paths converging toward the (1,1) / (-1,1) valley floor);
  2. 40 bats, 250 iterations on the eggcrate (plot the last ten
     iterations for the cluster snapshot).

Usage: python scripts/emit_figure_traces.py [outdir]
"""

import sys
from pathlib import Path

from batbench.cli import run_cli


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("traces")
    outdir.mkdir(parents=True, exist_ok=True)

    code = run_cli([
        "trace", "--algorithm", "bat", "--function", "rosenbrock_paper",
        "--dim", "2", "--pop", "25", "--iters", "20", "--seed", "1",
        "--output", str(outdir / "rosenbrock_paths.jsonl"),
    ])
    if code:
        return code
    code = run_cli([
        "trace", "--algorithm", "bat", "--function", "eggcrate",
        "--pop", "40", "--iters", "250", "--seed", "1",
        "--output", str(outdir / "eggcrate_paths.jsonl"),
    ])
    if code:
        return code
    print(f"wrote {outdir}/rosenbrock_paths.jsonl and {outdir}/eggcrate_paths.jsonl")
    return 0


if __name__ == "__main__":
    sys.exit(main())
