"""Command-line front end: run campaigns, compare algorithms, emit traces.

Subcommands:
  run             per-trial results for one algorithm on one function
  compare         summary table rows per (function, algorithm), Table-1 style
  trace           line-delimited per-iteration population snapshots
  list-functions  registry names with dimension constraints

Outputs are deterministic for a fixed flag set: repeated invocations with
the same seed produce byte-identical files.  CSV files carry the resolved
configuration as '#' comment lines; JSONL files get a .config.json sidecar.
Exit codes: 0 ok, 1 runtime failure, 2 invalid flags, 3 unknown
function/algorithm.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .baselines import GaParams, PsoParams
from .bat import BatParams
from .benchmarks import (
    UnknownBenchmarkError,
    benchmark_spec,
    dim_constraint,
    registry_names,
)
from .core import RandomStream, TrajectoryRecord
from .harness import (
    ALGORITHMS,
    UnknownAlgorithmError,
    experiment_trials,
    run_trial,
    summarize,
)

__all__ = ["RunConfig", "run_cli", "main"]


def _fmt(x: float) -> str:
    """17 significant digits: lossless float64 round trip."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation, embedded in every output for reproducibility."""

    subcommand: str
    algorithms: tuple[str, ...]
    functions: tuple[str, ...]
    dim: Optional[int]
    trials: int
    tolerance: Optional[float]
    max_evals: Optional[int]
    population: int
    overrides: dict = field(default_factory=dict)
    master_seed: int = 0
    output: Optional[str] = None
    output_format: str = "csv"
    iters: Optional[int] = None
    workers: int = 1

    def to_json(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "algorithms": list(self.algorithms),
            "functions": list(self.functions),
            "dim": self.dim,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "max_evals": self.max_evals,
            "population": self.population,
            "overrides": self.overrides,
            "master_seed": self.master_seed,
            "output_format": self.output_format,
            "iters": self.iters,
            "workers": self.workers,
            "rng": RandomStream.algorithm,
            "tool_version": __version__,
            "statistics": "mean/std over successful trials only; success_rate over all trials",
        }
        return json.dumps(payload, sort_keys=True)


_OVERRIDE_FLAGS = ("alpha", "gamma", "fmin", "fmax", "c1", "c2", "inertia", "pm", "pc")


def _overrides_from(args: argparse.Namespace) -> dict:
    return {k: getattr(args, k) for k in _OVERRIDE_FLAGS if getattr(args, k, None) is not None}


def _build_params(algorithm: str, cfg: RunConfig):
    """Algorithm params from population + overrides; invariants validated here."""
    ov = cfg.overrides
    if cfg.iters is not None:
        max_iter = cfg.iters
    else:
        # Let the evaluation budget bind first.
        max_iter = max(1, cfg.max_evals // cfg.population + 1)
    if algorithm == "bat":
        return BatParams(
            n=cfg.population,
            f_min=ov.get("fmin", 0.0),
            f_max=ov.get("fmax", 100.0),
            alpha=ov.get("alpha", 0.9),
            gamma=ov.get("gamma", 0.9),
            max_iterations=max_iter,
        )
    if algorithm == "pso":
        return PsoParams(
            n=cfg.population,
            c1=ov.get("c1", 2.0),
            c2=ov.get("c2", 2.0),
            inertia=ov.get("inertia", 1.0),
            max_iterations=max_iter,
        )
    if algorithm == "ga":
        return GaParams(
            n=cfg.population,
            p_mutation=ov.get("pm", 0.05),
            p_crossover=ov.get("pc", 0.95),
            max_generations=max_iter,
        )
    raise UnknownAlgorithmError(algorithm)


def _csv_rows(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write_output(cfg: RunConfig, body: str, sidecar: bool) -> None:
    if cfg.output is None:
        sys.stdout.write(body)
        return
    path = Path(cfg.output)
    path.write_text(body)
    if sidecar:
        Path(str(path) + ".config.json").write_text(cfg.to_json() + "\n")


def _comment_header(cfg: RunConfig) -> str:
    return f"# batbench {__version__}\n# config {cfg.to_json()}\n"


def _json_record(pairs: list[tuple[str, object]]) -> str:
    parts = []
    for key, value in pairs:
        if value is None:
            out = "null"
        elif isinstance(value, bool):
            out = "true" if value else "false"
        elif isinstance(value, int):
            out = str(value)
        elif isinstance(value, float):
            out = _fmt(value)
        else:
            out = json.dumps(value)
        parts.append(f'"{key}": {out}')
    return "{" + ", ".join(parts) + "}"


def _trace_line(record: TrajectoryRecord) -> str:
    rows = ",".join(
        "[" + ",".join(_fmt(v) for v in row) + "]" for row in record.positions
    )
    return '{"iter": %d, "positions": [%s], "best": %s}' % (
        record.iteration,
        rows,
        _fmt(record.best_value),
    )


def _cmd_list(_: argparse.Namespace) -> int:
    for name in registry_names():
        print(f"{name} {dim_constraint(name)}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        subcommand="run",
        algorithms=(args.algorithm,),
        functions=(args.function,),
        dim=args.dim,
        trials=args.trials,
        tolerance=args.tolerance,
        max_evals=args.max_evals,
        population=args.pop,
        overrides=_overrides_from(args),
        master_seed=args.seed,
        output=args.output,
        output_format=args.format,
        workers=args.workers,
    )
    if args.algorithm not in ALGORITHMS:
        raise UnknownAlgorithmError(args.algorithm)
    spec = benchmark_spec(args.function, args.dim)
    params = _build_params(args.algorithm, cfg)
    trials = experiment_trials(
        [args.algorithm],
        spec,
        args.tolerance,
        args.max_evals,
        args.trials,
        args.seed,
        params_by_algorithm={args.algorithm: params},
        workers=args.workers,
    )[args.algorithm]

    if cfg.output_format == "csv":
        header = [
            "function", "dim", "algorithm", "trial", "seed",
            "evaluations_used", "success", "best_value", "iterations",
        ]
        rows = [
            [
                r.function, str(r.dim), r.algorithm, str(k), str(r.seed),
                str(r.evaluations_used), "true" if r.success else "false",
                _fmt(r.best_value), str(r.iterations),
            ]
            for k, r in enumerate(trials)
        ]
        body = _comment_header(cfg) + _csv_rows(header, rows)
        _write_output(cfg, body, sidecar=False)
    else:
        lines = [
            _json_record(
                [
                    ("function", r.function),
                    ("dim", r.dim),
                    ("algorithm", r.algorithm),
                    ("trial", k),
                    ("seed", r.seed),
                    ("evaluations_used", r.evaluations_used),
                    ("success", r.success),
                    ("best_value", r.best_value),
                    ("iterations", r.iterations),
                ]
            )
            for k, r in enumerate(trials)
        ]
        _write_output(cfg, "\n".join(lines) + "\n", sidecar=True)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    algorithms = tuple(s.strip() for s in args.algorithms.split(",") if s.strip())
    functions = tuple(s.strip() for s in args.functions.split(",") if s.strip())
    if not algorithms or not functions:
        raise ValueError("need at least one algorithm and one function")
    cfg = RunConfig(
        subcommand="compare",
        algorithms=algorithms,
        functions=functions,
        dim=args.dim,
        trials=args.trials,
        tolerance=args.tolerance,
        max_evals=args.max_evals,
        population=args.pop,
        overrides=_overrides_from(args),
        master_seed=args.seed,
        output=args.output,
        output_format=args.format,
        workers=args.workers,
    )
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise UnknownAlgorithmError(algorithm)
    specs = [benchmark_spec(name, args.dim) for name in functions]
    params_by_algorithm = {a: _build_params(a, cfg) for a in algorithms}

    records = []
    for spec in specs:
        by_algorithm = experiment_trials(
            algorithms,
            spec,
            args.tolerance,
            args.max_evals,
            args.trials,
            args.seed,
            params_by_algorithm=params_by_algorithm,
            workers=args.workers,
        )
        for algorithm in algorithms:
            summary = summarize(by_algorithm[algorithm])
            records.append((spec, algorithm, summary))

    if cfg.output_format == "csv":
        header = [
            "function", "dim", "algorithm", "trials", "mean_evals",
            "std_evals", "success_rate", "master_seed", "tool_version",
        ]
        rows = [
            [
                spec.name, str(spec.objective.dim), algorithm, str(summary.trial_count),
                "" if summary.mean_evals is None else _fmt(summary.mean_evals),
                "" if summary.std_evals is None else _fmt(summary.std_evals),
                _fmt(summary.success_rate), str(args.seed), __version__,
            ]
            for spec, algorithm, summary in records
        ]
        body = _comment_header(cfg) + _csv_rows(header, rows)
        _write_output(cfg, body, sidecar=False)
    else:
        lines = [
            _json_record(
                [
                    ("function", spec.name),
                    ("dim", spec.objective.dim),
                    ("algorithm", algorithm),
                    ("trials", summary.trial_count),
                    ("mean_evals", summary.mean_evals),
                    ("std_evals", summary.std_evals),
                    ("success_rate", summary.success_rate),
                    ("master_seed", args.seed),
                    ("tool_version", __version__),
                ]
            )
            for spec, algorithm, summary in records
        ]
        _write_output(cfg, "\n".join(lines) + "\n", sidecar=True)
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    cfg = RunConfig(
        subcommand="trace",
        algorithms=(args.algorithm,),
        functions=(args.function,),
        dim=args.dim,
        trials=1,
        tolerance=None,
        max_evals=args.pop * (args.iters + 1),
        population=args.pop,
        overrides=_overrides_from(args),
        master_seed=args.seed,
        output=args.output,
        output_format="jsonl",
        iters=args.iters,
    )
    if args.algorithm not in ALGORITHMS:
        raise UnknownAlgorithmError(args.algorithm)
    if args.iters < 1:
        raise ValueError("--iters must be >= 1")
    spec = benchmark_spec(args.function, args.dim)
    params = _build_params(args.algorithm, cfg)
    records: list[TrajectoryRecord] = []
    run_trial(
        args.algorithm,
        spec,
        None,
        cfg.max_evals,
        args.seed,
        params=params,
        recorder=records.append,
    )
    body = "\n".join(_trace_line(r) for r in records) + "\n"
    _write_output(cfg, body, sidecar=True)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="batbench",
        description="Swarm-optimizer experiment runner: bat algorithm vs PSO and GA baselines.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, trials_default: int = 100):
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--tolerance", type=float, default=1e-5)
        p.add_argument("--max-evals", dest="max_evals", type=int, default=10_000)
        p.add_argument("--pop", type=int, default=40)
        p.add_argument("--seed", type=int, default=0, help="master seed")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
        for flag in _OVERRIDE_FLAGS:
            p.add_argument(f"--{flag}", type=float, default=None)

    p_run = sub.add_parser("run", help="per-trial results for one algorithm/function")
    p_run.add_argument("--algorithm", required=True)
    p_run.add_argument("--function", required=True)
    p_run.add_argument("--dim", type=int, default=None)
    common(p_run)
    p_run.set_defaults(handler=_cmd_run)

    p_cmp = sub.add_parser("compare", help="summary rows per (function, algorithm)")
    p_cmp.add_argument("--functions", required=True, help="comma-separated names")
    p_cmp.add_argument("--algorithms", default="bat,pso,ga")
    p_cmp.add_argument("--dim", type=int, default=None)
    common(p_cmp)
    p_cmp.set_defaults(handler=_cmd_compare)

    p_trc = sub.add_parser("trace", help="per-iteration population snapshots (jsonl)")
    p_trc.add_argument("--algorithm", required=True)
    p_trc.add_argument("--function", required=True)
    p_trc.add_argument("--dim", type=int, default=None)
    p_trc.add_argument("--pop", type=int, default=40)
    p_trc.add_argument("--iters", type=int, required=True)
    p_trc.add_argument("--seed", type=int, default=0)
    p_trc.add_argument("--output", default=None)
    for flag in _OVERRIDE_FLAGS:
        p_trc.add_argument(f"--{flag}", type=float, default=None)
    p_trc.set_defaults(handler=_cmd_trace)

    p_ls = sub.add_parser("list-functions", help="registry names with dim constraints")
    p_ls.set_defaults(handler=_cmd_list)

    return parser


def run_cli(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 2 on bad flags, 0 on --help
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (UnknownBenchmarkError, UnknownAlgorithmError) as exc:
        print(f"batbench: unknown name: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"batbench: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"batbench: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
