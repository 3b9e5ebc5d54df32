"""End-to-end acceptance checks, one test per criterion.

Each test reports a ``criterion k: PASS|FAIL`` line in the terminal summary.
The shared fixtures build self-generated reference sets for the 55-problem
core set and run random search and the dominance hillclimber over it once.
"""

import contextlib
import json
import math
import time
import xml.etree.ElementTree as ET
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from momark.core import Archive, nondominated_filter
from momark.experiment import (
    DEFAULT_TIMING_BUDGETS,
    ExperimentConfig,
    ProfileInputs,
    cmd_profile,
    cmd_run,
    cmd_timing,
    generate_refset,
    read_timing_csv,
    timing_totals,
)
from momark.indicators import IndicatorKind, ReferenceSet, eps_plus, gd, hv_diff, hv_oracle, hypervolume, igd
from momark.problems import CORE_NAMES, REGISTRY, ProblemInstance, ProblemMeta, Registry
from momark.problems.registry import DimClass, Modality, Separability
from momark.profiles import PANELS, ProfileKey, data_profile, read_profiles_csv, scaled_runtime
from momark.runtime import LADDERS, FirstHitRecord, read_first_hits
from momark.solvers import builtin_descriptor
from momark.storage import read_archive_csv, read_manifest, read_refset, refset_path, write_archive_csv, write_refset

pytestmark = pytest.mark.slow

# Observed at the first successful core run (seed 0, budget factor 100):
# the hillclimber matched or beat random search on 10 of the 10 panels.
CORE_PANEL_WINS_OBSERVED = 10
PANEL_WIN_FRACTION = 0.6


@pytest.fixture
def criterion(acceptance_lines):
    @contextlib.contextmanager
    def report(k: int, title: str):
        try:
            yield
        except BaseException:
            acceptance_lines.append(f"criterion {k}: FAIL  {title}")
            raise
        acceptance_lines.append(f"criterion {k}: PASS  {title}")

    return report


@pytest.fixture(scope="session")
def core_refsets(tmp_path_factory):
    out = tmp_path_factory.mktemp("core_refsets")
    generated = {}
    for name in CORE_NAMES:
        refset, frame, config = generate_refset(REGISTRY.lookup(name))
        write_refset(refset_path(out, name), refset, frame, config)
        generated[name] = (refset, frame, config)
    return out, generated


@pytest.fixture(scope="session")
def core_run(tmp_path_factory, core_refsets):
    out = tmp_path_factory.mktemp("core_run")
    cfg = ExperimentConfig(
        solvers=[builtin_descriptor("random_search"), builtin_descriptor("dominance_hillclimber")],
        output_dir=out,
        refset_dir=core_refsets[0],
    )
    t0 = time.perf_counter()
    summary = cmd_run(cfg)
    return summary, time.perf_counter() - t0


def synthetic_registry(count: int) -> Registry:
    """``count`` two-variable problems with fronts f2 = 1 - f1**p for p spread over [0.5, 2]."""
    reg = Registry()
    for k, p in enumerate(np.geomspace(0.5, 2.0, count)):

        def func(x, p=float(p), c=1.0 + k / count):
            return np.array([x[0], 1.0 + c * x[1] - x[0] ** p])

        meta = ProblemMeta(
            f"SYN{k:03d}", 2, 2, (0.0, 0.0), (1.0, 1.0), DimClass.LOW, Separability.SEPARABLE, Modality.UNIMODAL
        )
        reg.register(ProblemInstance(meta, func))
    return reg


def synthetic_front(name: str, p: float) -> ReferenceSet:
    t = np.linspace(0.0, 1.0, 101)
    return ReferenceSet(name, np.column_stack([t, 1.0 - t**p]))


def test_criterion_1_budget_arithmetic(criterion, tmp_path, core_run):
    with criterion(1, "budget accounting: 2e5 fe on 100 n=2 problems, 1000*sum(n) fe on the core set"):
        reg = synthetic_registry(100)
        for name, p in zip(reg.names(), np.geomspace(0.5, 2.0, 100)):
            refset = synthetic_front(name, float(p))
            write_refset(refset_path(tmp_path / "refs", name), refset, refset.frame(), {"generator": "analytic"})
        cfg = ExperimentConfig(problems=reg.names(), output_dir=tmp_path / "run", refset_dir=tmp_path / "refs")
        t0 = time.perf_counter()
        summary = cmd_run(cfg, registry=reg)
        elapsed = time.perf_counter() - t0
        totals = read_manifest(summary.run_dir)["totals"]["random_search"]
        assert sum(totals.values()) == 2 * 10**5
        assert all(v == 10 * 200 for v in totals.values()) and len(totals) == 100
        assert elapsed < 300.0, elapsed

        summary, core_seconds = core_run
        sum_n = sum(REGISTRY.lookup(name).meta.n for name in CORE_NAMES)
        for solver in ("random_search", "dominance_hillclimber"):
            assert sum(summary.manifest["totals"][solver].values()) == 10 * 100 * sum_n
        assert summary.manifest["incomplete_runs"] == 0
        # both solvers together, so random search alone is well inside the limit
        assert core_seconds < 300.0, core_seconds


def test_criterion_2_target_ladders(criterion):
    with criterion(2, "70-target ladders with exact endpoints and constant log spacing"):
        ends = {
            IndicatorKind.HV_DIFF: (-0.8, -3.0),
            IndicatorKind.GD: (-0.8, -3.0),
            IndicatorKind.IGD: (-0.8, -3.0),
            IndicatorKind.EPS_PLUS: (-0.1, -2.0),
        }
        for kind, (a, b) in ends.items():
            values = LADDERS[kind].values
            assert len(values) == 70
            assert abs(values[0] / 10**a - 1) <= 1e-12 and abs(values[-1] / 10**b - 1) <= 1e-12
            steps = np.diff(np.log10(values))
            assert np.max(np.abs(steps - (b - a) / 69)) <= 1e-12


def sweep_sum_2d(points, ref):
    """Exact 2-D hypervolume in rational arithmetic: sort by f1, add one slab per front point."""
    front = sorted(tuple(Fraction(v) for v in p) for p in points if p[0] < ref[0] and p[1] < ref[1])
    total, best_f2 = Fraction(0), Fraction(ref[1])
    for i, (f1, f2) in enumerate(front):
        if f2 >= best_f2:
            continue
        nxt = next((q[0] for q in front[i + 1 :] if q[1] < f2), Fraction(ref[0]))
        total += (nxt - f1) * (Fraction(ref[1]) - f2)
        best_f2 = f2
    return total


def test_criterion_3_hypervolume(criterion):
    with criterion(3, "exact HV within 2m/res of the grid oracle (500 cases) and equal to the 2-D sweep sum"):
        t0 = time.perf_counter()
        rng = np.random.default_rng(2024)
        resolution = {2: 512, 3: 96, 4: 24}
        worst = 0.0
        for case in range(500):
            m = 2 + case % 3
            pts = rng.random((int(rng.integers(1, 51)), m))
            ref = np.ones(m)
            err = abs(hypervolume(pts, ref) - hv_oracle(pts, ref, resolution[m]))
            worst = max(worst, err * resolution[m] / m)
            assert err <= 2 * m / resolution[m], (case, m, err)
        for _ in range(100):
            pts = rng.integers(0, 9, (int(rng.integers(1, 12)), 2)) / 8.0
            exact = float(sweep_sum_2d(pts, (1.0, 1.0)))
            assert abs(hypervolume(pts, (1.0, 1.0)) - exact) <= 1e-12
        assert time.perf_counter() - t0 < 120.0
        # the bound is m/res times the box volume, so worst stays below 1
        assert worst <= 1.0


def sphere_points(rng, count, m):
    v = np.abs(rng.standard_normal((count, m))) + 1e-9
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_criterion_4_indicator_laws(criterion):
    with criterion(4, "indicator monotonicity on 200 growth trajectories, GD/IGD duality, eps(R,R)=0"):
        rng = np.random.default_rng(4)
        violations = 0
        for t in range(200):
            m = 2 + t % 3
            refset = ReferenceSet("T", sphere_points(rng, 30, m))
            frame = refset.frame()
            r = frame.normalize(refset.points)
            assert eps_plus(r, r) == 0.0
            # one shared radius keeps every inserted point non-dominated w.r.t. the archive
            stream = sphere_points(rng, 30, m) * rng.uniform(1.0, 1.3)
            archive = Archive(m)
            prev = (math.inf, math.inf, math.inf)
            for fe, p in enumerate(stream, 1):
                if not archive.insert(p, fe).accepted:
                    continue
                a = frame.normalize(archive.points)
                cur = (hv_diff(archive.points, refset, frame), eps_plus(a, r), igd(a, r))
                violations += sum(c > q for c, q in zip(cur, prev))
                prev = cur
            other = rng.random((int(rng.integers(1, 40)), m))
            assert abs(gd(other, r) - igd(r, other)) <= 1e-12
            assert abs(gd(r, other) - igd(other, r)) <= 1e-12
        assert violations == 0


def test_criterion_5_first_hit_monotonicity(criterion, core_run):
    with criterion(5, "first hits non-decreasing in target index over every core run"):
        summary, _ = core_run
        series: dict[tuple, list[FirstHitRecord]] = {}
        for recs in summary.records.values():
            for r in recs:
                series.setdefault((r.problem, r.solver, r.run_id, r.indicator), []).append(r)
        assert len(series) == 2 * 10 * 55 * 4
        violations = 0
        for recs in series.values():
            recs.sort(key=lambda r: r.target_index)
            assert [r.target_index for r in recs] == list(range(70))
            fes = [math.inf if r.fe is None else r.fe for r in recs]
            violations += sum(b < a for a, b in zip(fes, fes[1:]))
        assert violations == 0


def test_criterion_6_data_profile_formula(criterion):
    with criterion(6, "data profile of {5, 50, never} and the disjoint-union weighted average"):
        hv = IndicatorKind.HV_DIFF
        recs = [FirstHitRecord("P", "s", 0, hv, k, 0.1, fe) for k, fe in enumerate([5, 50, None])]
        key = ProfileKey(tuple(("P", hv, k) for k in range(3)))
        prof = data_profile(recs, key, "s", [10.0, 100.0], dims={"P": 1})
        assert prof.fractions[0] == 1 / 3 and prof.fractions[1] == 2 / 3

        rng = np.random.default_rng(6)
        alphas = np.logspace(0, 4, 200)
        for _ in range(100):
            sizes = rng.integers(1, 60, 2)
            dims = {"A": int(rng.integers(1, 31)), "B": int(rng.integers(1, 31))}
            recs, keys = [], []
            for name, size in zip(("A", "B"), sizes):
                fes = rng.integers(1, 5000, size)
                never = rng.random(size) < 0.3
                recs += [
                    FirstHitRecord(name, "s", 0, hv, k, 0.1, None if never[k] else int(fes[k])) for k in range(size)
                ]
                keys.append(ProfileKey(tuple((name, hv, k) for k in range(size))))
            union = ProfileKey(keys[0].triples + keys[1].triples)
            parts = [data_profile(recs, k, "s", alphas, dims=dims).fractions for k in keys]
            whole = data_profile(recs, union, "s", alphas, dims=dims).fractions
            want = (sizes[0] * parts[0] + sizes[1] * parts[1]) / sizes.sum()
            assert np.max(np.abs(whole - want)) <= 1e-12


def test_criterion_7_deterministic_stochastic_abscissa(criterion):
    with criterion(7, "deterministic fe=1000 and stochastic fe=100 on n=2 both map to 50.0"):
        assert scaled_runtime(1000, 10, 2) == 50.0
        assert scaled_runtime(100, 1, 2) == 50.0
        hv = IndicatorKind.HV_DIFF
        key = ProfileKey((("P", hv, 0),))
        det = data_profile(
            [FirstHitRecord("P", "det", 0, hv, 0, 0.1, 1000)], key, "det", [49.999, 50.0], multiplier=10, dims={"P": 2}
        )
        sto = data_profile([FirstHitRecord("P", "sto", 0, hv, 0, 0.1, 100)], key, "sto", [49.999, 50.0], dims={"P": 2})
        assert det.fractions.tolist() == sto.fractions.tolist() == [0.0, 1.0]


def test_criterion_8_hillclimber_separation(criterion, core_run):
    with criterion(8, f"hillclimber >= random search at the final abscissa on >= {PANEL_WIN_FRACTION:.0%} of panels"):
        summary, _ = core_run
        inputs = ProfileInputs.load([summary.run_dir])
        wins = 0
        for panel in PANELS:
            profs = {p.solver: p for p in inputs.profiles(inputs.key(panel))}
            wins += profs["dominance_hillclimber"].fractions[-1] >= profs["random_search"].fractions[-1]
        assert wins >= PANEL_WIN_FRACTION * len(PANELS)
        assert wins >= CORE_PANEL_WINS_OBSERVED


def test_criterion_9_timing(criterion, tmp_path):
    with criterion(9, "timing grid {10,100,1000} with per-fe seconds, monotone totals, under 10 min"):
        t0 = time.perf_counter()
        out = cmd_timing(out=tmp_path / "timing.csv")
        elapsed = time.perf_counter() - t0
        rows = read_timing_csv(out)
        assert sorted({b for b, _, _, _ in rows}) == list(DEFAULT_TIMING_BUDGETS) == [10, 100, 1000]
        assert all(spf == s / b for b, _, s, spf in rows)
        totals = [s for _, s in timing_totals(rows)]
        assert all(a < b for a, b in zip(totals, totals[1:])), totals
        svg = ET.parse(out.with_suffix(".svg")).getroot()
        plotted = [float(c.get("data-seconds")) for c in svg.iter("{http://www.w3.org/2000/svg}circle")]
        assert plotted == totals
        assert elapsed < 600.0


def test_criterion_10_round_trip(criterion, core_refsets, core_run, tmp_path):
    with criterion(10, "CSV, reference set and manifest files re-parse to the in-memory values; SVG parses"):
        refset_dir, generated = core_refsets
        for name, (refset, frame, config) in generated.items():
            back, back_frame, back_config = read_refset(refset_path(refset_dir, name))
            np.testing.assert_array_equal(back.points, refset.points)
            np.testing.assert_array_equal(back_frame.ideal, frame.ideal)
            np.testing.assert_array_equal(back_frame.nadir, frame.nadir)
            assert back_config == config

        summary, _ = core_run
        run_dir = Path(summary.run_dir)
        assert read_manifest(run_dir) == json.loads(json.dumps(summary.manifest))
        for solver, recs in summary.records.items():
            assert sorted(read_first_hits(run_dir / f"firsthits_{solver}.csv"), key=repr) == sorted(recs, key=repr)

        for entry in summary.manifest["runs"]:
            path = run_dir / "archives" / entry["solver"] / f"{entry['problem']}_run{entry['run_id']}.csv"
            fes, pts = read_archive_csv(path)
            assert len(fes) == entry["archive_size"]
            np.testing.assert_array_equal(nondominated_filter(pts), pts)
            archive = Archive(pts.shape[1])
            for fe, f in zip(fes, pts):
                archive.insert(f, int(fe))
            write_archive_csv(tmp_path / "again.csv", archive)
            assert (tmp_path / "again.csv").read_bytes() == path.read_bytes()

        written = cmd_profile([run_dir], out_dir=tmp_path / "profiles")
        inputs = ProfileInputs.load([run_dir])
        for path in written:
            if path.suffix == ".svg":
                ET.parse(path)
                continue
            panel, indicator = path.stem.split("_")[1:]
            ind = None if indicator == "all" else [IndicatorKind(indicator)]
            assert read_profiles_csv(path) == inputs.profiles(inputs.key(panel, ind))
        assert len(written) == 2 * 5 * len(PANELS)
