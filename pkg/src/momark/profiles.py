"""Data profiles: computation, category aggregation, CSV and SVG output.

A data profile of solver ``s`` over a set ``P`` of (problem, indicator,
target) triples is the fraction of triples whose best first-hit runtime,
divided by ``multiplier * n_p``, is at most ``alpha``. The multiplier is 10
for a deterministic solver (one run with ten times the budget) and 1 for a
stochastic one, which puts both on the same per-run abscissa.
"""

from __future__ import annotations

import csv
import math
import xml.etree.ElementTree as ET
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from momark.errors import ConfigurationError
from momark.indicators import INDICATORS, IndicatorKind
from momark.problems import REGISTRY, ProblemMeta, Registry, category_filter
from momark.runtime import N_TARGETS, FirstHitRecord, atomic_write_text

Triple = tuple[str, IndicatorKind, int]

# Named category panels. Problems tagged "x" (mixed) fall out of every
# single-axis panel except "all" and the per-m ones.
PANELS: dict[str, dict] = {
    "all": {},
    "low-dim": {"dim_class": "L"},
    "high-dim": {"dim_class": "H"},
    "separable": {"separability": "S"},
    "non-separable": {"separability": "NS"},
    "unimodal": {"modality": "U"},
    "multimodal": {"modality": "M"},
    "m2": {"m": 2},
    "m3": {"m": 3},
    "m4": {"m": 4},
}


def default_alphas() -> np.ndarray:
    return np.logspace(0.0, 4.0, 200)


@dataclass(frozen=True)
class ProfileKey:
    triples: tuple[Triple, ...]
    label: str = ""

    def __post_init__(self):
        if len(set(self.triples)) != len(self.triples):
            raise ConfigurationError("profile key contains a repeated (problem, indicator, target) triple")

    def __len__(self) -> int:
        return len(self.triples)

    @property
    def problems(self) -> list[str]:
        return sorted({t[0] for t in self.triples})


@dataclass
class DataProfile:
    solver: str
    alphas: np.ndarray
    fractions: np.ndarray
    max_alpha_marker: float | None = field(default=None, compare=False)

    def __eq__(self, other):
        if not isinstance(other, DataProfile):
            return NotImplemented
        return (
            self.solver == other.solver
            and np.array_equal(self.alphas, other.alphas)
            and np.array_equal(self.fractions, other.fractions)
        )

    def at(self, alpha: float) -> float:
        """Profile value at ``alpha`` (right-continuous step function)."""
        j = int(np.searchsorted(self.alphas, alpha, side="right")) - 1
        return 0.0 if j < 0 else float(self.fractions[j])


def _predicate(category) -> Callable[[ProblemMeta], bool]:
    if category is None:
        return lambda meta: True
    if callable(category):
        return category
    if isinstance(category, str):
        if category not in PANELS:
            raise ConfigurationError(f"unknown category panel {category!r}; known: {', '.join(PANELS)}")
        category = PANELS[category]
    try:
        return category_filter(**category)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad category filter {category!r}: {exc}") from None


def _indicators(indicator_filter) -> tuple[IndicatorKind, ...]:
    if indicator_filter is None:
        return INDICATORS
    if isinstance(indicator_filter, (str, IndicatorKind)):
        indicator_filter = [indicator_filter]
    try:
        return tuple(IndicatorKind(k) for k in indicator_filter)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None


def aggregate_keys(
    records: Iterable[FirstHitRecord] | Iterable[str],
    category_filter=None,
    indicator_filter=None,
    *,
    registry: Registry = REGISTRY,
    label: str = "",
) -> ProfileKey:
    """All (problem, indicator, target) triples for the problems in ``records`` that pass the filters.

    ``records`` may also be a plain iterable of problem names.
    """
    pred = _predicate(category_filter)
    kinds = _indicators(indicator_filter)
    names = sorted({r if isinstance(r, str) else r.problem for r in records})
    chosen = [name for name in names if pred(registry.lookup(name).meta)]
    triples = tuple((name, kind, k) for name in chosen for kind in kinds for k in range(N_TARGETS))
    return ProfileKey(triples, label)


def scaled_runtime(fe: int, multiplier: int, n: int) -> float:
    return fe / (multiplier * n)


def data_profile(
    first_hits: Iterable[FirstHitRecord],
    key: ProfileKey,
    solver: str,
    alphas: Sequence[float] | None = None,
    *,
    multiplier: int = 1,
    dims: Mapping[str, int] | None = None,
    max_alpha_marker: float | None = None,
) -> DataProfile:
    """Empirical CDF of scaled runtimes over the triples of ``key``.

    ``first_hits`` must already be merged best-of-runs. Triples without a
    record, or recorded as never hit, count in no bucket.
    """
    if len(key) == 0:
        raise ConfigurationError("data profile over an empty set of targets")
    alphas = default_alphas() if alphas is None else np.asarray(alphas, dtype=np.float64)
    if np.any(np.diff(alphas) <= 0):
        raise ConfigurationError("alphas must be strictly increasing")
    wanted = set(key.triples)
    scaled = []
    seen = set()
    for r in first_hits:
        if r.solver != solver:
            continue
        t = (r.problem, r.indicator, r.target_index)
        if t not in wanted:
            continue
        if t in seen:
            raise ConfigurationError(f"duplicate record for {t}; merge runs first")
        seen.add(t)
        if r.fe is None:
            continue
        n = dims[r.problem] if dims is not None else REGISTRY.lookup(r.problem).meta.n
        scaled.append(scaled_runtime(r.fe, multiplier, n))
    runtimes = np.sort(np.array(scaled))
    counts = np.searchsorted(runtimes, alphas, side="right")
    return DataProfile(solver, alphas, counts / len(key), max_alpha_marker)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

PROFILE_HEADER = ["solver", "alpha", "fraction"]


def format_profiles_csv(profiles: Sequence[DataProfile]) -> str:
    if not profiles:
        raise ConfigurationError("no profiles to write")
    rows = []
    for p in profiles:
        rows.extend((p.solver, float(a), float(f)) for a, f in zip(p.alphas, p.fractions))
    rows.sort(key=lambda r: (r[0], r[1]))
    lines = [",".join(PROFILE_HEADER)] + [f"{s},{a!r},{f!r}" for s, a, f in rows]
    return "\n".join(lines) + "\n"


def emit_csv(profiles: Sequence[DataProfile], path: Path) -> Path:
    atomic_write_text(Path(path), format_profiles_csv(profiles))
    return Path(path)


def read_profiles_csv(path: Path) -> list[DataProfile]:
    grouped: dict[str, list[tuple[float, float]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != PROFILE_HEADER:
            raise ConfigurationError(f"{path}: unexpected profile header {reader.fieldnames}")
        for row in reader:
            grouped.setdefault(row["solver"], []).append((float(row["alpha"]), float(row["fraction"])))
    return [DataProfile(s, np.array([a for a, _ in pts]), np.array([f for _, f in pts])) for s, pts in grouped.items()]


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class PlotFrame:
    """Pixel geometry of a log-x / linear-y plot."""

    log_min: float
    log_max: float
    left: float = 70.0
    right: float = 170.0
    top: float = 40.0
    bottom: float = 50.0
    width: float = 720.0
    height: float = 420.0

    @property
    def plot_w(self) -> float:
        return self.width - self.left - self.right

    @property
    def plot_h(self) -> float:
        return self.height - self.top - self.bottom

    def x_of(self, alpha: float) -> float:
        frac = (math.log10(alpha) - self.log_min) / (self.log_max - self.log_min)
        return round(self.left + frac * self.plot_w, 3)

    def y_of(self, fraction: float) -> float:
        return round(self.top + (1.0 - fraction) * self.plot_h, 3)


def plot_frame_for(profiles: Sequence[DataProfile]) -> PlotFrame:
    lo = min(float(p.alphas[0]) for p in profiles)
    hi = max(float(p.alphas[-1]) for p in profiles)
    for p in profiles:
        if p.max_alpha_marker:
            lo = min(lo, p.max_alpha_marker)
            hi = max(hi, p.max_alpha_marker)
    log_lo, log_hi = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
    if log_hi == log_lo:
        log_hi += 1
    return PlotFrame(float(log_lo), float(log_hi))


def _fmt(v: float) -> str:
    return f"{v:g}"


def render_svg(profiles: Sequence[DataProfile], title: str) -> str:
    if not profiles:
        raise ConfigurationError("no profiles to plot")
    pf = plot_frame_for(profiles)
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=_fmt(pf.width),
        height=_fmt(pf.height),
        viewBox=f"0 0 {_fmt(pf.width)} {_fmt(pf.height)}",
    )
    ET.SubElement(svg, "title").text = title
    ET.SubElement(
        svg, "text", x=_fmt(pf.left), y="24", attrib={"font-size": "15", "font-family": "sans-serif"}
    ).text = title

    axes = ET.SubElement(svg, "g", attrib={"class": "axes", "stroke": "#444", "fill": "none"})
    x0 = pf.left
    y0, y1 = pf.top + pf.plot_h, pf.top
    ET.SubElement(axes, "rect", x=_fmt(x0), y=_fmt(y1), width=_fmt(pf.plot_w), height=_fmt(pf.plot_h))
    labels = ET.SubElement(svg, "g", attrib={"font-size": "11", "font-family": "sans-serif", "fill": "#222"})
    for e in range(int(pf.log_min), int(pf.log_max) + 1):
        x = pf.x_of(10.0**e)
        ET.SubElement(axes, "line", x1=_fmt(x), y1=_fmt(y0), x2=_fmt(x), y2=_fmt(y0 + 5))
        ET.SubElement(labels, "text", x=_fmt(x - 8), y=_fmt(y0 + 18)).text = f"1e{e}"
    for i in range(6):
        frac = i / 5
        y = pf.y_of(frac)
        ET.SubElement(axes, "line", x1=_fmt(x0 - 5), y1=_fmt(y), x2=_fmt(x0), y2=_fmt(y))
        ET.SubElement(labels, "text", x=_fmt(x0 - 32), y=_fmt(y + 4)).text = f"{frac:.1f}"
    ET.SubElement(
        labels, "text", x=_fmt(x0 + pf.plot_w / 2 - 90), y=_fmt(pf.height - 12)
    ).text = "function evaluations / dimension"
    ET.SubElement(
        labels,
        "text",
        x="14",
        y=_fmt(pf.top + pf.plot_h / 2),
        transform=f"rotate(-90 14 {_fmt(pf.top + pf.plot_h / 2)})",
    ).text = "fraction of targets"

    for i, p in enumerate(profiles):
        color = PALETTE[i % len(PALETTE)]
        pts = []
        prev_y = pf.y_of(0.0)
        for a, f in zip(p.alphas, p.fractions):
            x = pf.x_of(float(a))
            y = pf.y_of(float(f))
            pts.append(f"{_fmt(x)},{_fmt(prev_y)}")
            pts.append(f"{_fmt(x)},{_fmt(y)}")
            prev_y = y
        ET.SubElement(
            svg,
            "polyline",
            points=" ".join(pts),
            stroke=color,
            fill="none",
            attrib={"class": "profile", "data-solver": p.solver, "stroke-width": "1.8"},
        )
        if p.max_alpha_marker:
            mx = pf.x_of(p.max_alpha_marker)
            my = pf.y_of(p.at(p.max_alpha_marker))
            ET.SubElement(
                svg,
                "text",
                x=_fmt(mx),
                y=_fmt(my),
                fill=color,
                attrib={
                    "class": "budget-marker",
                    "data-solver": p.solver,
                    "data-alpha": repr(float(p.max_alpha_marker)),
                    "text-anchor": "middle",
                    "dominant-baseline": "central",
                    "font-size": "16",
                },
            ).text = "×"
        ly = pf.top + 14 + 18 * i
        lx = pf.left + pf.plot_w + 12
        ET.SubElement(svg, "line", x1=_fmt(lx), y1=_fmt(ly), x2=_fmt(lx + 18), y2=_fmt(ly), stroke=color)
        ET.SubElement(
            svg,
            "text",
            x=_fmt(lx + 24),
            y=_fmt(ly + 4),
            attrib={"class": "legend", "font-size": "11", "font-family": "sans-serif"},
        ).text = p.solver
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def emit_svg(profiles: Sequence[DataProfile], title: str, path: Path) -> Path:
    atomic_write_text(Path(path), render_svg(profiles, title))
    return Path(path)
