"""Experiment lifecycle: reference sets, benchmark runs, profiles and timing."""

from __future__ import annotations

import logging
import math
import os
import time
import xml.etree.ElementTree as ET
from collections import defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from momark import __version__, kernels
from momark.core import Archive
from momark.errors import ConfigurationError, DegenerateFrameError, DomainError, MomarkError, ProtocolError
from momark.indicators import INDICATORS, NormalizationFrame, ReferenceSet
from momark.problems import CORE_NAMES, REGISTRY, ProblemInstance, Registry, category_filter
from momark.profiles import (
    PANELS,
    DataProfile,
    ProfileKey,
    aggregate_keys,
    data_profile,
    default_alphas,
    emit_csv,
    emit_svg,
)
from momark.runtime import (
    FirstHitRecord,
    RunBudget,
    RunRecorder,
    SolverKind,
    atomic_write_text,
    merge_best_of_runs,
    read_first_hits,
    write_first_hits,
)
from momark.solvers import (
    BUILTIN_KINDS,
    ExternalSession,
    SolverDescriptor,
    builtin_descriptor,
    dominance_hillclimber,
    make_stream,
)
from momark.storage import (
    format_config,
    parse_config_text,
    read_manifest,
    read_refset,
    refset_path,
    write_archive_csv,
    write_manifest,
    write_refset,
)

log = logging.getLogger(__name__)

DEFAULT_TIMING_PROBLEMS = ("BK1", "DPAM1", "L3ZDT1", "DTLZ3", "FES3")
DEFAULT_TIMING_BUDGETS = (10, 100, 1000)
REFSET_BUDGET_MULTIPLIER = 10
# Extra annealed hillclimber pass; without it boxes like MOP1's [-1e5, 1e5]
# leave every fixed-step builtin far from the front and the frame degenerate.
REFSET_FINAL_STEP_SCALE = 1e-6
# Split into several restarts: a single annealed run can collapse the whole
# union onto one dominating point (seen on ZDT2).
REFSET_ANNEALED_RESTARTS = 10

CONVENTIONS = {
    "normalization": "ideal/nadir of the reference set; archive and reference set both normalized",
    "hv_reference_point": "(1,...,1) in normalized space",
    "gd_igd": "arithmetic mean of Euclidean nearest-neighbour distances",
    "targets": "absolute indicator values in normalized space",
    "best_of_runs": "minimum first-hit fe over runs",
}


def default_output_dir() -> Path:
    return Path(os.environ.get("MOMARK_OUT", "momark_out"))


@dataclass
class ExperimentConfig:
    problems: list[str] = field(default_factory=lambda: list(CORE_NAMES))
    categories: dict = field(default_factory=dict)
    solvers: list[SolverDescriptor] = field(default_factory=lambda: [builtin_descriptor("random_search")])
    budget_factor: int = 100
    runs_stochastic: int = 10
    base_seed: int = 0
    output_dir: Path = field(default_factory=lambda: default_output_dir() / "run")
    refset_dir: Path = field(default_factory=lambda: default_output_dir() / "refsets")
    step_scale: float = 0.1
    workers: int = 1

    def validate(self, registry: Registry = REGISTRY) -> None:
        if self.budget_factor < 1 or self.runs_stochastic < 1:
            raise ConfigurationError("budget_factor and runs must both be >= 1")
        if not self.solvers:
            raise ConfigurationError("no solvers configured")
        names = [s.name for s in self.solvers]
        if len(set(names)) != len(names):
            raise ConfigurationError(f"duplicate solver names: {names}")
        self.resolve_problems(registry)

    def resolve_problems(self, registry: Registry = REGISTRY) -> list[ProblemInstance]:
        try:
            pred = category_filter(**self.categories)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"bad category filter {self.categories}: {exc}") from None
        chosen = [registry.lookup(name) for name in self.problems]
        chosen = [p for p in chosen if pred(p.meta)]
        if not chosen:
            raise ConfigurationError("no problems selected")
        return chosen

    def snapshot(self) -> dict:
        return {
            "problems": list(self.problems),
            "categories": dict(self.categories),
            "solvers": [s.spec() for s in self.solvers],
            "budget_factor": self.budget_factor,
            "runs_stochastic": self.runs_stochastic,
            "base_seed": self.base_seed,
            "step_scale": self.step_scale,
        }

    def to_text(self) -> str:
        pairs = [("problems", ",".join(self.problems))]
        pairs += [("category", f"{k}={v}") for k, v in self.categories.items()]
        pairs += [("solver", s.spec()) for s in self.solvers]
        pairs += [
            ("budget_factor", str(self.budget_factor)),
            ("runs", str(self.runs_stochastic)),
            ("seed", str(self.base_seed)),
            ("step_scale", repr(self.step_scale)),
            ("out", str(self.output_dir)),
            ("refsets", str(self.refset_dir)),
        ]
        return format_config(pairs)

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        from momark.solvers import parse_solver_spec

        cfg = cls()
        solvers = []
        for key, value in parse_config_text(text):
            try:
                if key == "problems":
                    cfg.problems = parse_problem_list(value)
                elif key == "category":
                    cfg.categories.update(parse_category(value))
                elif key == "solver":
                    solvers.append(parse_solver_spec(value))
                elif key == "budget_factor":
                    cfg.budget_factor = int(value)
                elif key == "runs":
                    cfg.runs_stochastic = int(value)
                elif key == "seed":
                    cfg.base_seed = int(value)
                elif key == "step_scale":
                    cfg.step_scale = float(value)
                elif key == "out":
                    cfg.output_dir = Path(value)
                elif key == "refsets":
                    cfg.refset_dir = Path(value)
                elif key == "workers":
                    cfg.workers = int(value)
                else:
                    raise ConfigurationError(f"unknown config key {key!r}")
            except ValueError as exc:
                raise ConfigurationError(f"config key {key!r}: {exc}") from None
        if solvers:
            cfg.solvers = solvers
        return cfg


_CATEGORY_KEYS = {"D": "dim_class", "S": "separability", "M": "modality", "m": "m"}


def parse_category(text: str) -> dict:
    """``D=H`` / ``S=NS`` / ``M=U`` / ``m=3`` into :func:`category_filter` keyword form."""
    if "=" not in text:
        raise ConfigurationError(f"category filter must look like D=H, got {text!r}")
    key, value = (s.strip() for s in text.split("=", 1))
    if key not in _CATEGORY_KEYS:
        raise ConfigurationError(f"unknown category axis {key!r}; use one of D, S, M, m")
    if key == "m":
        return {"m": int(value)}
    return {_CATEGORY_KEYS[key]: value}


def parse_problem_list(text: str) -> list[str]:
    text = text.strip()
    if text in ("core", ""):
        return list(CORE_NAMES)
    if text == "all":
        return REGISTRY.names()
    return [t.strip() for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------------------
# reference sets
# ---------------------------------------------------------------------------


def generate_refset(
    problem: ProblemInstance, budget_factor: int = 100, seed: int = 0, *, step_scale: float = 0.1
) -> tuple[ReferenceSet, NormalizationFrame, dict]:
    """Union-then-filter of every builtin solver's archive at ten times the standard budget.

    Hillclimber restarts with a geometrically shrinking step (together one
    more standard-size budget) join the union so that problems with very wide
    boxes still get a usable front.
    """
    budget = REFSET_BUDGET_MULTIPLIER * budget_factor * problem.meta.n
    archive = Archive(problem.meta.m)
    fe = 0
    for name in sorted(BUILTIN_KINDS):
        for ev in make_stream(builtin_descriptor(name), problem, budget, seed, step_scale=step_scale):
            fe += 1
            archive.insert(ev.f, fe)
    # spawned seeds keep these restarts independent of the benchmarked runs' seeds
    for child in np.random.SeedSequence(seed).spawn(REFSET_ANNEALED_RESTARTS):
        stream = dominance_hillclimber(
            problem,
            budget // REFSET_ANNEALED_RESTARTS,
            int(child.generate_state(1)[0]),
            step_scale,
            final_step_scale=REFSET_FINAL_STEP_SCALE,
        )
        for ev in stream:
            fe += 1
            archive.insert(ev.f, fe)
    refset = ReferenceSet(problem.name, archive.points.copy())
    frame = refset.frame()
    if frame.degenerate.any():
        bad = np.flatnonzero(frame.degenerate).tolist()
        raise DegenerateFrameError(f"reference set for {problem.name} is degenerate in objective(s) {bad}")
    config = {
        "generator": "union of builtin solver archives, non-dominated filtered",
        "solvers": sorted(BUILTIN_KINDS) + ["dominance_hillclimber(annealed)"],
        "final_step_scale": REFSET_FINAL_STEP_SCALE,
        "annealed_restarts": REFSET_ANNEALED_RESTARTS,
        "budget_factor": budget_factor,
        "evaluations_per_solver": budget,
        "seed": seed,
        "step_scale": step_scale,
        "tool_version": __version__,
    }
    return refset, frame, config


def cmd_refset(
    problems: Sequence[str],
    refset_dir: Path,
    budget_factor: int = 100,
    seed: int = 0,
    *,
    force: bool = False,
    registry: Registry = REGISTRY,
) -> list[Path]:
    instances = [registry.lookup(name) for name in problems]
    refset_dir = Path(refset_dir)
    if not force:
        existing = [str(refset_path(refset_dir, p.name)) for p in instances if refset_path(refset_dir, p.name).exists()]
        if existing:
            raise ConfigurationError(
                f"refusing to overwrite {len(existing)} reference set(s) without --force: {existing[0]}"
            )
    written = []
    for p in instances:
        refset, frame, config = generate_refset(p, budget_factor, seed)
        written.append(write_refset(refset_path(refset_dir, p.name), refset, frame, config))
        log.info("refset %s: %d points", p.name, refset.points.shape[0])
    return written


def load_refsets(refset_dir: Path, problems: Iterable[str]) -> dict[str, tuple[ReferenceSet, NormalizationFrame]]:
    out = {}
    missing = []
    for name in problems:
        path = refset_path(refset_dir, name)
        if not path.exists():
            missing.append(name)
            continue
        refset, frame, _ = read_refset(path)
        out[name] = (refset, frame)
    if missing:
        raise ConfigurationError(
            f"no reference set for {', '.join(missing)} in {refset_dir}; "
            f"generate them with `momark refset --problems {','.join(missing)} --out {refset_dir}`"
        )
    return out


# ---------------------------------------------------------------------------
# benchmark runs
# ---------------------------------------------------------------------------


@dataclass
class CellResult:
    records: list[FirstHitRecord]
    fe_stamps: np.ndarray
    points: np.ndarray
    entry: dict


def run_cell(
    descriptor: SolverDescriptor,
    problem: ProblemInstance,
    run_id: int,
    seed: int,
    budget: int,
    refset: ReferenceSet,
    frame: NormalizationFrame,
    step_scale: float = 0.1,
) -> CellResult:
    """Execute one (solver, problem, run) cell and record its first hits."""
    recorder = RunRecorder(problem.name, descriptor.name, run_id, refset, frame, budget=budget)
    session = None
    if descriptor.command is not None:
        session = ExternalSession(descriptor.command, problem, budget, seed)
        stream = iter(session)
    else:
        stream = make_stream(descriptor, problem, budget, seed, step_scale=step_scale)
    error = None
    try:
        recorder.consume(stream)
    except (ProtocolError, DomainError, OSError) as exc:
        if descriptor.command is None:
            raise
        error = f"{type(exc).__name__}: {exc}"
        log.error("run %s/%s/%d failed: %s", descriptor.name, problem.name, run_id, error)
    truncated = bool(session and session.truncated)
    entry = {
        "solver": descriptor.name,
        "problem": problem.name,
        "run_id": run_id,
        "seed": seed,
        "budget": budget,
        "fe_consumed": recorder.fe,
        "archive_size": len(recorder.archive),
        "complete": error is None and recorder.fe == budget,
        "truncated": truncated,
        "error": error,
    }
    return CellResult(recorder.records(), recorder.archive.fe_stamps.copy(), recorder.archive.points.copy(), entry)


def _cell_worker(args) -> CellResult:
    descriptor, problem, run_id, seed, budget, refset_dir, step_scale = args
    refset, frame, _ = read_refset(refset_path(refset_dir, problem.name))
    return run_cell(descriptor, problem, run_id, seed, budget, refset, frame, step_scale)


@dataclass
class RunSummary:
    run_dir: Path
    manifest: dict
    records: dict[str, list[FirstHitRecord]]


def plan_cells(config: ExperimentConfig, problems: Sequence[ProblemInstance]):
    for desc in config.solvers:
        for p in problems:
            budget = RunBudget.for_solver(desc.kind, p.meta.n, config.budget_factor, config.runs_stochastic)
            for run_id in range(budget.runs):
                yield desc, p, run_id, config.base_seed + run_id, budget.per_run_budget


def solver_manifest_entry(desc: SolverDescriptor, config: ExperimentConfig) -> dict:
    # budgets scale linearly in n, so the n=1 figures are per-dimension factors
    b = RunBudget.for_solver(desc.kind, 1, config.budget_factor, config.runs_stochastic)
    return {
        "kind": desc.kind.value,
        "spec": desc.spec(),
        "runs": b.runs,
        "multiplier": b.multiplier,
        "per_run_budget_factor": b.per_run_budget,
    }


def cmd_run(config: ExperimentConfig, *, registry: Registry = REGISTRY) -> RunSummary:
    """Run every (solver, problem, run) cell and persist first hits, archives and the manifest."""
    config.validate(registry)
    problems = config.resolve_problems(registry)
    refsets = load_refsets(config.refset_dir, [p.name for p in problems])
    run_dir = Path(config.output_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    cells = list(plan_cells(config, problems))

    if config.workers > 1:
        jobs = [(d, p, r, s, b, Path(config.refset_dir), config.step_scale) for d, p, r, s, b in cells]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_cell_worker, jobs))
    else:
        results = [run_cell(d, p, r, s, b, *refsets[p.name], step_scale=config.step_scale) for d, p, r, s, b in cells]

    records: dict[str, list[FirstHitRecord]] = defaultdict(list)
    entries = []
    totals: dict[str, dict[str, int]] = defaultdict(lambda: defaultdict(int))
    for (desc, p, run_id, _, _), res in zip(cells, results):
        records[desc.name].extend(res.records)
        entries.append(res.entry)
        totals[desc.name][p.name] += res.entry["fe_consumed"]
        archive = Archive(p.meta.m)
        for fe, f in zip(res.fe_stamps, res.points):
            archive.insert(f, int(fe))
        write_archive_csv(run_dir / "archives" / desc.name / f"{p.name}_run{run_id}.csv", archive)
    for desc in config.solvers:
        write_first_hits(run_dir / f"firsthits_{desc.name}.csv", records[desc.name])

    manifest = {
        "tool": "momark",
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "kernel_backend": kernels.backend_name(),
        "config": config.snapshot(),
        "conventions": CONVENTIONS,
        "solvers": {d.name: solver_manifest_entry(d, config) for d in config.solvers},
        "problems": {p.name: {"n": p.meta.n, "m": p.meta.m} for p in problems},
        "frames": {
            name: {"ideal": fr.ideal.tolist(), "nadir": fr.nadir.tolist(), "refset_size": int(rs.points.shape[0])}
            for name, (rs, fr) in sorted(refsets.items())
        },
        "runs": entries,
        "totals": {s: dict(v) for s, v in totals.items()},
        "incomplete_runs": sum(1 for e in entries if not e["complete"]),
    }
    write_manifest(run_dir, manifest)
    atomic_write_text(run_dir / "config.txt", config.to_text())
    return RunSummary(run_dir, manifest, dict(records))


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


def load_run_dirs(run_dirs: Sequence[Path]):
    """Merge solvers across run directories; they must share the budget settings."""
    if not run_dirs:
        raise ConfigurationError("no run directories given")
    manifests = [read_manifest(d) for d in run_dirs]
    factors = {m["config"]["budget_factor"] for m in manifests}
    if len(factors) != 1:
        raise ConfigurationError(f"run directories use different budget_factor values: {sorted(factors)}")
    runs = {m["config"]["runs_stochastic"] for m in manifests}
    if len(runs) != 1:
        raise ConfigurationError(f"run directories use different run counts: {sorted(runs)}")
    solvers: dict[str, dict] = {}
    dims: dict[str, int] = {}
    records: list[FirstHitRecord] = []
    for d, man in zip(run_dirs, manifests):
        for name, info in man["solvers"].items():
            if name in solvers:
                raise ConfigurationError(f"solver {name!r} appears in more than one run directory")
            solvers[name] = info
            records.extend(read_first_hits(Path(d) / f"firsthits_{name}.csv"))
        for pname, info in man["problems"].items():
            dims[pname] = info["n"]
    return solvers, dims, records, factors.pop()


def budget_marker(solver_info: dict) -> float:
    """Abscissa of the longest possible run: per-run budget / (multiplier * n)."""
    return float(solver_info["per_run_budget_factor"]) / float(solver_info["multiplier"])


@dataclass
class ProfileInputs:
    """Run directories loaded once: solver info, problem dimensions and best-of-runs first hits."""

    solvers: dict[str, dict]
    dims: dict[str, int]
    merged: list[FirstHitRecord]

    @classmethod
    def load(cls, run_dirs: Sequence[Path]) -> "ProfileInputs":
        solvers, dims, records, _ = load_run_dirs([Path(d) for d in run_dirs])
        return cls(solvers, dims, merge_best_of_runs(records))

    def key(self, panel: str, indicator=None, *, registry: Registry = REGISTRY, label: str = "") -> ProfileKey:
        return aggregate_keys(sorted(self.dims), panel, indicator, registry=registry, label=label)

    def profiles(self, key: ProfileKey, alphas=None) -> list[DataProfile]:
        """One profile per solver; empty when ``key`` holds none of the run problems."""
        if len(key) == 0:
            return []
        return [
            data_profile(
                self.merged,
                key,
                name,
                alphas,
                multiplier=int(info["multiplier"]),
                dims=self.dims,
                max_alpha_marker=budget_marker(info),
            )
            for name, info in sorted(self.solvers.items())
        ]


def cmd_profile(
    run_dirs: Sequence[Path],
    panels: Sequence[str] | None = None,
    out_dir: Path | None = None,
    alphas: np.ndarray | None = None,
    *,
    registry: Registry = REGISTRY,
) -> list[Path]:
    """Best-of-runs merge, then one CSV+SVG per (panel, indicator) plus a combined 'all' indicator."""
    run_dirs = [Path(d) for d in run_dirs]
    inputs = ProfileInputs.load(run_dirs)
    panels = list(PANELS) if not panels else list(panels)
    for panel in panels:
        if panel not in PANELS:
            raise ConfigurationError(f"unknown panel {panel!r}; known: {', '.join(PANELS)}")
    out_dir = Path(out_dir) if out_dir is not None else run_dirs[0] / "profiles"
    alphas = default_alphas() if alphas is None else alphas
    written = []
    for panel in panels:
        for ind_label, ind_filter in [(k.value, [k]) for k in INDICATORS] + [("all", None)]:
            key = inputs.key(panel, ind_filter, registry=registry, label=f"{panel}/{ind_label}")
            if len(key) == 0:
                log.info("panel %s has no problems in these runs; skipped", panel)
                continue
            profiles = inputs.profiles(key, alphas)
            stem = out_dir / f"profile_{panel}_{ind_label}"
            title = f"{panel} / {ind_label}: {len(key.problems)} problems, {len(key)} targets"
            written.append(emit_csv(profiles, stem.with_suffix(".csv")))
            written.append(emit_svg(profiles, title, stem.with_suffix(".svg")))
    return written


def panel_profiles(
    run_dirs: Sequence[Path], panel: str, indicator=None, alphas=None, *, registry: Registry = REGISTRY
) -> list[DataProfile]:
    inputs = ProfileInputs.load(run_dirs)
    return inputs.profiles(inputs.key(panel, indicator, registry=registry), alphas)


# ---------------------------------------------------------------------------
# timing
# ---------------------------------------------------------------------------

TIMING_HEADER = "budget,problem,seconds,seconds_per_fe"


def cmd_timing(
    problems: Sequence[str] | None = None,
    budgets: Sequence[int] = DEFAULT_TIMING_BUDGETS,
    solver: SolverDescriptor | str = "random_search",
    out: Path | None = None,
    seed: int = 0,
    *,
    registry: Registry = REGISTRY,
) -> Path:
    """Wall-clock seconds per whole run for each (budget, problem), run serially."""
    if isinstance(solver, str):
        solver = builtin_descriptor(solver)
    notes = []
    if problems is None:
        problems = [p for p in DEFAULT_TIMING_PROBLEMS if p in registry]
        skipped = [p for p in DEFAULT_TIMING_PROBLEMS if p not in registry]
        if skipped:
            notes.append(f"# default problem list minus unregistered {','.join(skipped)}")
    instances = [registry.lookup(name) for name in problems]
    if any(b < 1 for b in budgets):
        raise ConfigurationError("timing budgets must be positive")
    # warm-up so that one-off import/JIT costs do not land in the first cell
    for _ in make_stream(solver, instances[0], 2, seed):
        pass
    rows = []
    for budget in budgets:
        for p in instances:
            t0 = time.perf_counter()
            for _ in make_stream(solver, p, budget, seed):
                pass
            seconds = time.perf_counter() - t0
            rows.append((budget, p.name, seconds, seconds / budget))
    out = Path(out) if out is not None else default_output_dir() / "timing.csv"
    lines = [f"# solver={solver.spec()} problems={','.join(problems)}"] + notes + [TIMING_HEADER]
    lines += [f"{b},{name},{s!r},{spf!r}" for b, name, s, spf in rows]
    atomic_write_text(out, "\n".join(lines) + "\n")
    atomic_write_text(out.with_suffix(".svg"), render_timing_svg(rows, f"{solver.name}: total seconds over problems"))
    return out


def timing_totals(rows) -> list[tuple[int, float]]:
    """Seconds summed over problems for each budget, in budget order."""
    totals: dict[int, float] = defaultdict(float)
    for budget, _, seconds, _ in rows:
        totals[budget] += seconds
    return sorted(totals.items())


def render_timing_svg(rows, title: str, width: int = 480, height: int = 320) -> str:
    """Log-log polyline of total seconds against budget."""
    totals = timing_totals(rows)
    lx = [math.log10(b) for b, _ in totals]
    ly = [math.log10(max(s, 1e-9)) for _, s in totals]
    x0, x1 = min(lx), max(lx) if max(lx) > min(lx) else min(lx) + 1
    y0, y1 = min(ly), max(ly) if max(ly) > min(ly) else min(ly) + 1
    pad = 50

    def px(v, lo, hi, size, flip=False):
        t = (v - lo) / (hi - lo)
        return round(pad + (1 - t if flip else t) * (size - 2 * pad), 3)

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(width), height=str(height))
    ET.SubElement(svg, "text", x=str(pad), y="20").text = title
    pts = " ".join(f"{px(a, x0, x1, width)},{px(b, y0, y1, height, True)}" for a, b in zip(lx, ly))
    ET.SubElement(svg, "polyline", {"class": "timing", "points": pts, "fill": "none", "stroke": "#1f77b4"})
    for (budget, seconds), a, b in zip(totals, lx, ly):
        ET.SubElement(
            svg,
            "circle",
            {
                "cx": str(px(a, x0, x1, width)),
                "cy": str(px(b, y0, y1, height, True)),
                "r": "3",
                "data-budget": str(budget),
                "data-seconds": repr(seconds),
            },
        )
        ET.SubElement(svg, "text", x=str(px(a, x0, x1, width)), y=str(height - 20)).text = str(budget)
    return ET.tostring(svg, encoding="unicode") + "\n"


def read_timing_csv(path: Path) -> list[tuple[int, str, float, float]]:
    rows = []
    header_seen = False
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != TIMING_HEADER:
                raise ConfigurationError(f"{path}: unexpected timing header {line!r}")
            header_seen = True
            continue
        b, name, s, spf = line.split(",")
        rows.append((int(b), name, float(s), float(spf)))
    return rows


# ---------------------------------------------------------------------------
# listing
# ---------------------------------------------------------------------------


def cmd_list_problems(filters: dict | None = None, *, registry: Registry = REGISTRY) -> str:
    try:
        pred = category_filter(**(filters or {}))
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad filter {filters}: {exc}") from None
    return "".join(meta.row() + "\n" for meta in registry.list(pred))


__all__ = [
    "ExperimentConfig",
    "MomarkError",
    "SolverKind",
    "cmd_list_problems",
    "cmd_profile",
    "cmd_refset",
    "cmd_run",
    "cmd_timing",
    "generate_refset",
]
