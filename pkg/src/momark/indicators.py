"""Normalization and the four quality indicators.

All indicators are "smaller is better". The distance-type indicators and the
additive epsilon take point sets that are already normalized; ``hv_diff``
takes raw objective vectors plus the frame and normalizes internally.
An empty archive scores ``math.inf`` everywhere, meaning "no target reachable
yet".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from momark import kernels
from momark.core import nondominated_filter
from momark.errors import ConfigurationError, DegenerateFrameError, DimensionError, UnsupportedDimensionError


class IndicatorKind(str, Enum):
    HV_DIFF = "HvDiff"
    EPS_PLUS = "EpsPlus"
    GD = "GD"
    IGD = "IGD"

    @property
    def pareto_compliant(self) -> bool:
        return self in (IndicatorKind.HV_DIFF, IndicatorKind.EPS_PLUS)


INDICATORS = (IndicatorKind.HV_DIFF, IndicatorKind.EPS_PLUS, IndicatorKind.GD, IndicatorKind.IGD)


def _as_points(points, m: int | None = None) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.size == 0:
        return np.empty((0, m or (arr.shape[-1] if arr.ndim == 2 else 0)))
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if m is not None and arr.shape[1] != m:
        raise DimensionError(f"expected m={m} objectives, got {arr.shape[1]}")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True)
class NormalizationFrame:
    ideal: np.ndarray
    nadir: np.ndarray

    def __post_init__(self):
        ideal = np.asarray(self.ideal, dtype=np.float64)
        nadir = np.asarray(self.nadir, dtype=np.float64)
        if ideal.shape != nadir.shape:
            raise DimensionError("ideal and nadir differ in length")
        if np.any(ideal > nadir):
            raise ValueError("ideal must be componentwise <= nadir")
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "nadir", nadir)

    @classmethod
    def from_points(cls, points) -> "NormalizationFrame":
        arr = _as_points(points)
        if arr.shape[0] == 0:
            raise ConfigurationError("cannot derive a normalization frame from an empty set")
        return cls(arr.min(axis=0), arr.max(axis=0))

    @property
    def m(self) -> int:
        return self.ideal.shape[0]

    @property
    def degenerate(self) -> np.ndarray:
        return self.ideal == self.nadir

    def normalize(self, points) -> np.ndarray:
        """Map rows of ``points`` so that ideal -> 0 and nadir -> 1 per coordinate.

        Raises:
            DegenerateFrameError: a degenerate coordinate where some value differs from the ideal.
        """
        arr = _as_points(points, self.m)
        span = self.nadir - self.ideal
        deg = self.degenerate
        if not deg.any():
            return (arr - self.ideal) / span
        if np.any(arr[:, deg] != self.ideal[deg]):
            bad = np.flatnonzero(deg).tolist()
            raise DegenerateFrameError(f"frame is degenerate in objective(s) {bad}")
        safe = np.where(deg, 1.0, span)
        return (arr - self.ideal) / safe


def normalize(v, frame: NormalizationFrame) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    out = frame.normalize(v.reshape(1, -1) if v.ndim == 1 else v)
    return out[0] if v.ndim == 1 else out


@dataclass(frozen=True)
class ReferenceSet:
    problem: str
    points: np.ndarray
    _normalized_hv: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        arr = _as_points(self.points)
        if arr.shape[0] == 0:
            raise ConfigurationError(f"reference set for {self.problem} is empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"reference set for {self.problem} has non-finite values")
        if nondominated_filter(arr).shape[0] != arr.shape[0]:
            raise ValueError(f"reference set for {self.problem} is not mutually non-dominated")
        object.__setattr__(self, "points", arr)

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def frame(self) -> NormalizationFrame:
        return NormalizationFrame.from_points(self.points)


# ---------------------------------------------------------------------------
# Hypervolume
# ---------------------------------------------------------------------------


def hypervolume(points, ref_point) -> float:
    """Exact hypervolume dominated by ``points`` and bounded by ``ref_point``.

    Points that are not strictly better than the reference point in every
    objective contribute nothing.

    Raises:
        UnsupportedDimensionError: for m outside {2, 3, 4}.
    """
    ref = np.asarray(ref_point, dtype=np.float64).reshape(-1)
    m = ref.shape[0]
    if m not in (2, 3, 4):
        raise UnsupportedDimensionError(f"exact hypervolume supports m in {{2,3,4}}, got m={m}")
    arr = _as_points(points, m)
    if arr.shape[0] == 0:
        return 0.0
    if not np.all(np.isfinite(arr)):
        raise ValueError("hypervolume of non-finite points")
    arr = arr[np.all(arr < ref, axis=1)]
    if arr.shape[0] == 0:
        return 0.0
    if arr.shape[0] > 1:
        arr = nondominated_filter(arr)
    return kernels.hypervolume_kernel(np.ascontiguousarray(arr), ref)


def hv_oracle(points, ref_point, grid_resolution: int = 128) -> float:
    """Grid-counting hypervolume estimate, independent of the exact sweeps.

    Counts cell centres of a regular grid over ``[min(points), ref_point]``
    that are weakly dominated by some point. The error is at most
    ``m / grid_resolution`` times the volume of that box.
    """
    ref = np.asarray(ref_point, dtype=np.float64).reshape(-1)
    m = ref.shape[0]
    arr = _as_points(points, m)
    if arr.shape[0] == 0:
        return 0.0
    arr = arr[np.all(arr < ref, axis=1)]
    if arr.shape[0] == 0:
        return 0.0
    lo = arr.min(axis=0)
    res = int(grid_resolution)
    axes = [lo[i] + (np.arange(res) + 0.5) * (ref[i] - lo[i]) / res for i in range(m)]
    grids = np.meshgrid(*axes, indexing="ij", sparse=True)
    covered = np.zeros((res,) * m, dtype=bool)
    for p in arr:
        cell = grids[0] >= p[0]
        for i in range(1, m):
            cell = cell & (grids[i] >= p[i])
        covered |= cell
    box = float(np.prod(ref - lo))
    return covered.sum() / res**m * box


def unit_reference(m: int) -> np.ndarray:
    return np.ones(m)


def hv_diff(archive_points, refset: ReferenceSet, frame: NormalizationFrame, ref_point=None) -> float:
    """Hypervolume of the normalized reference set minus that of the normalized archive."""
    arr = _as_points(archive_points, frame.m)
    if arr.shape[0] == 0:
        return math.inf
    ref = unit_reference(frame.m) if ref_point is None else np.asarray(ref_point, dtype=np.float64)
    return reference_hypervolume(refset, frame, ref) - hypervolume(frame.normalize(arr), ref)


def reference_hypervolume(refset: ReferenceSet, frame: NormalizationFrame, ref_point=None) -> float:
    ref = unit_reference(frame.m) if ref_point is None else np.asarray(ref_point, dtype=np.float64)
    key = (frame.ideal.tobytes(), frame.nadir.tobytes(), ref.tobytes())
    cache = refset._normalized_hv
    if key not in cache:
        cache[key] = hypervolume(frame.normalize(refset.points), ref)
    return cache[key]


# ---------------------------------------------------------------------------
# Distance-type indicators (inputs already normalized)
# ---------------------------------------------------------------------------


def _pair(archive_points, refset_points):
    r = _as_points(refset_points)
    if r.shape[0] == 0:
        raise ConfigurationError("reference set is empty")
    a = _as_points(archive_points, r.shape[1])
    return a, r


def eps_plus(archive_points, refset_points) -> float:
    """Smallest additive shift after which the archive weakly dominates every reference point."""
    a, r = _pair(archive_points, refset_points)
    if a.shape[0] == 0:
        return math.inf
    return float(np.max(kernels.eps_shift(a, r)))


def gd(archive_points, refset_points) -> float:
    """Mean Euclidean distance from archive points to their nearest reference point."""
    a, r = _pair(archive_points, refset_points)
    if a.shape[0] == 0:
        return math.inf
    return float(np.mean(kernels.nearest_distance(a, r)))


def igd(archive_points, refset_points) -> float:
    """Mean Euclidean distance from reference points to their nearest archive point."""
    a, r = _pair(archive_points, refset_points)
    if a.shape[0] == 0:
        return math.inf
    return float(np.mean(kernels.nearest_distance(r, a)))


def compute_all(archive_points, refset: ReferenceSet, frame: NormalizationFrame) -> dict[IndicatorKind, float]:
    """All four indicators for raw ``archive_points`` against ``refset``."""
    arr = _as_points(archive_points, frame.m)
    if arr.shape[0] == 0:
        return {kind: math.inf for kind in INDICATORS}
    a = frame.normalize(arr)
    r = frame.normalize(refset.points)
    return {
        IndicatorKind.HV_DIFF: hv_diff(arr, refset, frame),
        IndicatorKind.EPS_PLUS: eps_plus(a, r),
        IndicatorKind.GD: gd(a, r),
        IndicatorKind.IGD: igd(a, r),
    }
