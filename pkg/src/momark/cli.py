"""Command-line entry point: ``momark {run,refset,profile,timing,list-problems}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from momark import __version__
from momark.errors import ConfigurationError, MomarkError
from momark.experiment import (
    DEFAULT_TIMING_BUDGETS,
    ExperimentConfig,
    cmd_list_problems,
    cmd_profile,
    cmd_refset,
    cmd_run,
    cmd_timing,
    default_output_dir,
    parse_category,
    parse_problem_list,
)
from momark.solvers import builtin_descriptor, parse_solver_spec

log = logging.getLogger("momark")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; usage errors are configuration errors here."""

    def error(self, message):
        raise ConfigurationError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="momark", description="Black-box multi-objective benchmarking harness.")
    parser.add_argument("--version", action="version", version=f"momark {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, budget=True):
        p.add_argument("--problems", help="comma-separated names, 'core' or 'all'")
        if budget:
            p.add_argument("--budget-factor", type=int, help="evaluations per dimension per run (default 100)")
            p.add_argument("--seed", type=int, help="base seed (default 0)")

    run = sub.add_parser("run", help="benchmark solvers on problems")
    run.add_argument("--config", type=Path, help="flat key = value config file")
    common(run)
    run.add_argument("--solver", action="append", metavar="NAME[:KIND[:CMD]]", help="repeatable")
    run.add_argument("--runs", type=int, help="runs per stochastic solver (default 10)")
    run.add_argument("--category", action="append", metavar="AXIS=VALUE", help="D=H, S=NS, M=U or m=3")
    run.add_argument("--out", type=Path, help="run directory")
    run.add_argument("--refsets", type=Path, help="reference set directory")
    run.add_argument("--workers", type=int, help="process pool size (default 1)")

    ref = sub.add_parser("refset", help="generate reference sets")
    common(ref)
    ref.add_argument("--out", type=Path, help="reference set directory")
    ref.add_argument("--force", action="store_true", help="overwrite existing files")

    prof = sub.add_parser("profile", help="data profiles from run directories")
    prof.add_argument("run_dirs", nargs="+", type=Path)
    prof.add_argument("--panel", action="append", help="panel name, repeatable (default: every panel)")
    prof.add_argument("--out", type=Path, help="output directory (default <first run dir>/profiles)")

    tim = sub.add_parser("timing", help="wall-clock cost per run")
    tim.add_argument("--problems", help="comma-separated names")
    tim.add_argument("--budgets", type=_int_list, default=list(DEFAULT_TIMING_BUDGETS))
    tim.add_argument("--solver", default="random_search", help="builtin solver name")
    tim.add_argument("--seed", type=int, default=0)
    tim.add_argument("--out", type=Path, help="CSV path (default $MOMARK_OUT/timing.csv)")

    lst = sub.add_parser("list-problems", help="tab-separated problem table")
    lst.add_argument("--filter", action="append", default=[], metavar="AXIS=VALUE")
    return parser


def config_from_args(args) -> ExperimentConfig:
    if args.config is not None:
        try:
            cfg = ExperimentConfig.from_text(args.config.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {args.config}: {exc}") from None
    else:
        cfg = ExperimentConfig()
    if args.problems is not None:
        cfg.problems = parse_problem_list(args.problems)
    for cat in args.category or []:
        cfg.categories.update(parse_category(cat))
    if args.solver:
        cfg.solvers = [parse_solver_spec(s) for s in args.solver]
    if args.budget_factor is not None:
        cfg.budget_factor = args.budget_factor
    if args.runs is not None:
        cfg.runs_stochastic = args.runs
    if args.seed is not None:
        cfg.base_seed = args.seed
    if args.out is not None:
        cfg.output_dir = args.out
    if args.refsets is not None:
        cfg.refset_dir = args.refsets
    if args.workers is not None:
        cfg.workers = args.workers
    return cfg


def dispatch(args) -> int:
    if args.command == "run":
        summary = cmd_run(config_from_args(args))
        man = summary.manifest
        print(f"{summary.run_dir}: {len(man['runs'])} runs, {man['incomplete_runs']} incomplete")
        return 0 if man["incomplete_runs"] == 0 else 2
    if args.command == "refset":
        names = parse_problem_list(args.problems or "core")
        out = args.out if args.out is not None else default_output_dir() / "refsets"
        paths = cmd_refset(
            names,
            out,
            budget_factor=args.budget_factor if args.budget_factor is not None else 100,
            seed=args.seed if args.seed is not None else 0,
            force=args.force,
        )
        print(f"wrote {len(paths)} reference sets to {out}")
        return 0
    if args.command == "profile":
        paths = cmd_profile(args.run_dirs, args.panel, args.out)
        print(f"wrote {len(paths)} files")
        return 0
    if args.command == "timing":
        names = parse_problem_list(args.problems) if args.problems else None
        path = cmd_timing(names, args.budgets, builtin_descriptor(args.solver), args.out, args.seed)
        print(path)
        return 0
    if args.command == "list-problems":
        filters = {}
        for f in args.filter:
            filters.update(parse_category(f))
        sys.stdout.write(cmd_list_problems(filters))
        return 0
    raise ConfigurationError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s"
        )
        return dispatch(args)
    except MomarkError as exc:
        print(f"momark: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
