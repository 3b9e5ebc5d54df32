"""Pareto-dominance primitives and the non-dominated archive.

Objective vectors are plain 1-D ``float64`` numpy arrays (minimization). The
archive is unbounded, keeps exactly the mutually non-dominated vectors seen so
far, and stamps each with the function-evaluation count at which it arrived.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from momark import kernels
from momark.errors import DimensionError, ProtocolError


def as_objective(values: Iterable[float] | np.ndarray) -> np.ndarray:
    """Convert to a finite objective vector with at least two entries.

    Raises:
        DimensionError: fewer than two objectives.
        ValueError: a NaN or infinite entry.
    """
    v = np.array(values, dtype=np.float64).reshape(-1)
    if v.shape[0] < 2:
        raise DimensionError(f"objective vectors need m >= 2 entries, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"objective vector has non-finite entries: {v.tolist()}")
    return v


def dominates(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"cannot compare vectors of length {a.size} and {b.size}")
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_filter(points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    """Return the non-dominated subset of ``points`` as a 2-D array.

    Exact duplicates collapse to their first occurrence and survivors keep
    their input order.
    """
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=np.float64)
    else:
        rows = [np.asarray(p, dtype=np.float64).reshape(-1) for p in points]
        if not rows:
            return np.empty((0, 0))
        if len({r.shape[0] for r in rows}) != 1:
            raise DimensionError("points of mixed dimension")
        arr = np.vstack(rows)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D point array, got shape {arr.shape}")
    if arr.shape[0] == 0:
        return arr.copy()
    arr = np.ascontiguousarray(arr)
    return arr[kernels.nondominated_mask(arr)]


@dataclass(frozen=True)
class ArchiveEntry:
    objectives: np.ndarray
    fe_stamp: int


@dataclass
class InsertReport:
    accepted: bool
    removed: list[ArchiveEntry] = field(default_factory=list)
    removed_slots: list[int] = field(default_factory=list)
    slot: int | None = None

    @property
    def status(self) -> str:
        return "accepted" if self.accepted else "rejected"


class Archive:
    """Unbounded archive of mutually non-dominated objective vectors.

    Entries live in a growable buffer; each accepted vector gets a stable
    integer slot that never changes while the entry is alive, which lets
    incremental indicator trackers key their per-entry caches on it.
    """

    def __init__(self, m: int | None = None, capacity: int = 64):
        self.m = m
        self._cap = capacity
        self._f: np.ndarray | None = None
        self._fe = np.zeros(capacity, dtype=np.int64)
        self._slot = np.zeros(capacity, dtype=np.int64)
        self._size = 0
        self._next_slot = 0
        self._last_fe = 0

    def __len__(self) -> int:
        return self._size

    def __iter__(self):
        for i in range(self._size):
            yield ArchiveEntry(self._f[i].copy(), int(self._fe[i]))

    @property
    def points(self) -> np.ndarray:
        """Current objective vectors, shape ``(len, m)``, in insertion order."""
        if self._f is None:
            return np.empty((0, self.m or 0))
        return self._f[: self._size]

    @property
    def fe_stamps(self) -> np.ndarray:
        return self._fe[: self._size]

    @property
    def slots(self) -> np.ndarray:
        return self._slot[: self._size]

    def _ensure(self, m: int) -> None:
        if self._f is None:
            if self.m is not None and self.m != m:
                raise DimensionError(f"archive holds m={self.m} vectors, got m={m}")
            self.m = m
            self._f = np.empty((self._cap, m))
        elif m != self.m:
            raise DimensionError(f"archive holds m={self.m} vectors, got m={m}")
        if self._size == self._cap:
            self._cap *= 2
            self._f = np.resize(self._f, (self._cap, m))
            self._fe = np.resize(self._fe, self._cap)
            self._slot = np.resize(self._slot, self._cap)

    def insert(self, candidate: Sequence[float] | np.ndarray, fe: int) -> InsertReport:
        """Offer ``candidate`` found at evaluation ``fe``.

        Raises:
            ValueError: non-finite candidate.
            ProtocolError: ``fe`` smaller than an existing stamp.
        """
        c = as_objective(candidate)
        if fe < 1:
            raise ValueError(f"fe stamps start at 1, got {fe}")
        if fe < self._last_fe:
            raise ProtocolError(f"fe {fe} precedes archive stamp {self._last_fe}")
        self._ensure(c.shape[0])
        self._last_fe = fe
        live = self._f[: self._size]
        if self._size and np.any(np.all(live <= c, axis=1)):
            return InsertReport(False)
        gone = np.flatnonzero(np.all(c <= live, axis=1)) if self._size else np.empty(0, dtype=np.int64)
        report = InsertReport(True)
        if gone.size:
            report.removed = [ArchiveEntry(live[i].copy(), int(self._fe[i])) for i in gone]
            report.removed_slots = [int(self._slot[i]) for i in gone]
            keep = np.ones(self._size, dtype=bool)
            keep[gone] = False
            n = int(keep.sum())
            self._f[:n] = live[keep]
            self._fe[:n] = self._fe[: self._size][keep]
            self._slot[:n] = self._slot[: self._size][keep]
            self._size = n
        self._ensure(c.shape[0])
        self._f[self._size] = c
        self._fe[self._size] = fe
        self._slot[self._size] = self._next_slot
        report.slot = self._next_slot
        self._next_slot += 1
        self._size += 1
        return report


def archive_insert(archive: Archive, candidate, fe: int) -> InsertReport:
    return archive.insert(candidate, fe)
