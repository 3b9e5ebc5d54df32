"""Targets, first-hit runtime recording and best-of-runs merging.

A run's runtime to a target is the first function-evaluation count at which
the indicator value of the archive drops to or below that target. Indicator
values only change when the archive changes, so they are recomputed (or
incrementally updated) on archive changes only.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import NamedTuple

import numpy as np

from momark import kernels
from momark.core import Archive
from momark.errors import ConfigurationError, ProtocolError
from momark.indicators import (
    INDICATORS,
    IndicatorKind,
    NormalizationFrame,
    ReferenceSet,
    compute_all,
    hypervolume,
    reference_hypervolume,
    unit_reference,
)

N_TARGETS = 70

_EXPONENTS = {
    IndicatorKind.HV_DIFF: (-0.8, -3.0),
    IndicatorKind.GD: (-0.8, -3.0),
    IndicatorKind.IGD: (-0.8, -3.0),
    IndicatorKind.EPS_PLUS: (-0.1, -2.0),
}


class SolverKind(str, Enum):
    DETERMINISTIC = "deterministic"
    STOCHASTIC = "stochastic"


class Evaluation(NamedTuple):
    fe: int
    x: np.ndarray
    f: np.ndarray


@dataclass(frozen=True)
class TargetLadder:
    indicator: IndicatorKind
    exponents: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return self.values.shape[0]


def make_targets(kind: IndicatorKind | str) -> TargetLadder:
    kind = IndicatorKind(kind)
    start, stop = _EXPONENTS[kind]
    exponents = np.linspace(start, stop, N_TARGETS)
    return TargetLadder(kind, exponents, 10.0**exponents)


LADDERS = {kind: make_targets(kind) for kind in INDICATORS}


@dataclass(frozen=True)
class RunBudget:
    """Per-problem evaluation budget for one solver class.

    Stochastic solvers get ``runs`` independent runs of ``v`` evaluations;
    deterministic solvers get a single run of ``runs * v``.
    """

    v: int
    runs: int
    per_run_budget: int
    multiplier: int

    @classmethod
    def for_solver(
        cls, kind: SolverKind | str, n: int, budget_factor: int = 100, runs_stochastic: int = 10
    ) -> "RunBudget":
        if budget_factor < 1 or runs_stochastic < 1:
            raise ConfigurationError("budget_factor and runs must be >= 1")
        v = budget_factor * n
        if SolverKind(kind) is SolverKind.STOCHASTIC:
            return cls(v, runs_stochastic, v, 1)
        return cls(v, 1, runs_stochastic * v, runs_stochastic)

    @property
    def total(self) -> int:
        return self.runs * self.per_run_budget


@dataclass(frozen=True)
class FirstHitRecord:
    problem: str
    solver: str
    run_id: int
    indicator: IndicatorKind
    target_index: int
    target_value: float
    fe: int | None  # None means the target was never reached

    @property
    def key(self) -> tuple[str, str, IndicatorKind, int]:
        return (self.problem, self.solver, self.indicator, self.target_index)

    @property
    def hit(self) -> bool:
        return self.fe is not None


class IndicatorTracker:
    """Incrementally maintained indicator values for a growing archive.

    * additive epsilon: per reference point, the running minimum shift over
      every accepted vector. A vector leaves the archive only when something
      dominating it arrives, and a dominating vector never needs a larger
      shift, so removals cannot change the minimum.
    * IGD: per reference point, nearest distance plus the slot of the archive
      entry achieving it; only rows whose nearest entry was removed are
      recomputed.
    * GD: nearest reference distance cached per archive slot.
    * hypervolume difference: recomputed on the (small) normalized archive.
    """

    def __init__(self, refset: ReferenceSet, frame: NormalizationFrame):
        self.frame = frame
        self.refset = refset
        self.ref_norm = np.ascontiguousarray(frame.normalize(refset.points))
        self.ref_point = unit_reference(frame.m)
        self.ref_hv = reference_hypervolume(refset, frame, self.ref_point)
        nr = self.ref_norm.shape[0]
        self._eps = np.full(nr, np.inf)
        self._igd = np.full(nr, np.inf)
        self._igd_slot = np.full(nr, -1, dtype=np.int64)
        self._gd: dict[int, float] = {}

    def update(self, archive: Archive, report) -> dict[IndicatorKind, float]:
        a_norm = np.ascontiguousarray(self.frame.normalize(archive.points))
        slots = archive.slots
        new = a_norm[-1:]
        np.minimum(self._eps, kernels.eps_shift(new, self.ref_norm), out=self._eps)
        self._gd[report.slot] = float(kernels.nearest_distance(new, self.ref_norm)[0])
        for s in report.removed_slots:
            del self._gd[s]
        d_new = kernels.nearest_distance(self.ref_norm, new)
        closer = d_new < self._igd
        self._igd[closer] = d_new[closer]
        self._igd_slot[closer] = report.slot
        if report.removed_slots:
            stale = np.flatnonzero(np.isin(self._igd_slot, report.removed_slots))
            if stale.size:
                dist, idx = kernels.nearest_index(np.ascontiguousarray(self.ref_norm[stale]), a_norm)
                self._igd[stale] = dist
                self._igd_slot[stale] = slots[idx]
        return {
            IndicatorKind.HV_DIFF: self.ref_hv - hypervolume(a_norm, self.ref_point),
            IndicatorKind.EPS_PLUS: float(np.max(self._eps)),
            IndicatorKind.GD: float(np.mean(np.array([self._gd[int(s)] for s in slots]))),
            IndicatorKind.IGD: float(np.mean(self._igd)),
        }


class RunRecorder:
    """Consume one run's evaluations and record first hits for every target.

    With ``incremental=False`` all four indicators are recomputed from scratch
    after every single evaluation; this is the slow reference path used to
    check the incremental one.
    """

    def __init__(
        self,
        problem: str,
        solver: str,
        run_id: int,
        refset: ReferenceSet,
        frame: NormalizationFrame,
        budget: int | None = None,
        incremental: bool = True,
    ):
        self.problem = problem
        self.solver = solver
        self.run_id = run_id
        self.refset = refset
        self.frame = frame
        self.budget = budget
        self.incremental = incremental
        self.archive = Archive(frame.m)
        self.tracker = IndicatorTracker(refset, frame) if incremental else None
        self.fe = 0
        self.values = {kind: math.inf for kind in INDICATORS}
        self._next = {kind: 0 for kind in INDICATORS}
        self._hits = {kind: [None] * N_TARGETS for kind in INDICATORS}

    def observe(self, fe: int, f) -> bool:
        """Process one evaluation; returns whether the archive changed."""
        if fe <= self.fe:
            raise ProtocolError(f"evaluation fe={fe} arrived after fe={self.fe}")
        if self.budget is not None and fe > self.budget:
            raise ProtocolError(f"evaluation fe={fe} exceeds the run budget {self.budget}")
        self.fe = fe
        report = self.archive.insert(f, fe)
        if self.incremental:
            if not report.accepted:
                return False
            self.values = self.tracker.update(self.archive, report)
        else:
            self.values = compute_all(self.archive.points, self.refset, self.frame)
        for kind, value in self.values.items():
            ladder = LADDERS[kind].values
            k = self._next[kind]
            hits = self._hits[kind]
            while k < N_TARGETS and value <= ladder[k]:
                hits[k] = fe
                k += 1
            self._next[kind] = k
        return report.accepted

    def consume(self, stream: Iterable) -> "RunRecorder":
        for item in stream:
            if len(item) == 2:
                fe, f = item
            else:
                fe, f = item[0], item[-1]
            self.observe(int(fe), f)
        return self

    def records(self) -> list[FirstHitRecord]:
        out = []
        for kind in INDICATORS:
            ladder = LADDERS[kind].values
            for k, fe in enumerate(self._hits[kind]):
                out.append(FirstHitRecord(self.problem, self.solver, self.run_id, kind, k, float(ladder[k]), fe))
        return out


def record_run(
    problem: str,
    solver_name: str,
    run_id: int,
    evaluation_stream: Iterable,
    refset: ReferenceSet,
    frame: NormalizationFrame,
    *,
    budget: int | None = None,
    incremental: bool = True,
) -> list[FirstHitRecord]:
    """First-hit records (4 indicators x 70 targets) for one run's evaluation stream.

    ``evaluation_stream`` yields ``(fe, f)`` pairs or :class:`Evaluation`
    triples in strictly increasing ``fe`` order.
    """
    name = getattr(problem, "name", problem)
    recorder = RunRecorder(name, solver_name, run_id, refset, frame, budget=budget, incremental=incremental)
    return recorder.consume(evaluation_stream).records()


def best_of_runs(records: Iterable[FirstHitRecord]) -> FirstHitRecord:
    """Merge one target's records across runs: the smallest first-hit fe wins."""
    records = list(records)
    if not records:
        raise ValueError("best_of_runs needs at least one record")
    keys = {r.key for r in records}
    if len(keys) != 1:
        raise KeyError(f"records span several (problem, solver, indicator, target) keys: {sorted(map(str, keys))}")
    hit = [r for r in records if r.fe is not None]
    if not hit:
        return min(records, key=lambda r: r.run_id)
    return min(hit, key=lambda r: (r.fe, r.run_id))


def merge_best_of_runs(records: Iterable[FirstHitRecord]) -> list[FirstHitRecord]:
    groups: dict[tuple, list[FirstHitRecord]] = defaultdict(list)
    for r in records:
        groups[r.key].append(r)
    return [best_of_runs(groups[k]) for k in sorted(groups, key=_sort_key)]


def _sort_key(key):
    problem, solver, kind, idx = key
    return (problem, solver, INDICATORS.index(kind), idx)


# ---------------------------------------------------------------------------
# first-hit table files
# ---------------------------------------------------------------------------

FIRST_HIT_HEADER = ["problem", "solver", "run", "indicator", "target_index", "target_value", "fe"]


def _record_order(r: FirstHitRecord):
    return (r.solver, r.problem, r.run_id, INDICATORS.index(r.indicator), r.target_index)


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
        # mkstemp creates 0600 files; give the result the usual umask-derived mode
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_first_hits(records: Iterable[FirstHitRecord]) -> str:
    lines = [",".join(FIRST_HIT_HEADER)]
    for r in sorted(records, key=_record_order):
        fe = "" if r.fe is None else str(r.fe)
        lines.append(f"{r.problem},{r.solver},{r.run_id},{r.indicator.value},{r.target_index},{r.target_value!r},{fe}")
    return "\n".join(lines) + "\n"


def write_first_hits(path: Path, records: Iterable[FirstHitRecord]) -> None:
    atomic_write_text(path, format_first_hits(records))


def read_first_hits(path: Path) -> list[FirstHitRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != FIRST_HIT_HEADER:
            raise ConfigurationError(f"{path}: unexpected first-hit header {reader.fieldnames}")
        return list(_parse_rows(reader))


def _parse_rows(rows: Iterator[dict]) -> Iterator[FirstHitRecord]:
    for row in rows:
        yield FirstHitRecord(
            row["problem"],
            row["solver"],
            int(row["run"]),
            IndicatorKind(row["indicator"]),
            int(row["target_index"]),
            float(row["target_value"]),
            int(row["fe"]) if row["fe"] else None,
        )
