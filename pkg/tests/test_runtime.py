import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momark.core import nondominated_filter
from momark.errors import ConfigurationError, ProtocolError
from momark.indicators import INDICATORS, IndicatorKind, ReferenceSet
from momark.runtime import (
    LADDERS,
    N_TARGETS,
    FirstHitRecord,
    RunBudget,
    SolverKind,
    best_of_runs,
    format_first_hits,
    make_targets,
    merge_best_of_runs,
    read_first_hits,
    record_run,
    write_first_hits,
)

STAIRS_REF = ReferenceSet("T", np.array([(0.0, 1.0), (0.25, 0.75), (0.5, 0.5), (0.75, 0.25), (1.0, 0.0)]))
FRAME = STAIRS_REF.frame()


def hits(records, kind):
    return [r.fe for r in sorted(records, key=lambda r: r.target_index) if r.indicator is kind]


def test_ladders():
    hv = make_targets(IndicatorKind.HV_DIFF)
    assert len(hv) == N_TARGETS == 70
    assert hv.values[0] == pytest.approx(10**-0.8, rel=1e-12)
    assert hv.values[-1] == pytest.approx(1e-3, rel=1e-12)
    eps = make_targets("EpsPlus")
    assert eps.values[0] == pytest.approx(0.794328, rel=1e-6)
    assert eps.values[-1] == pytest.approx(0.01, rel=1e-12)
    for ladder in LADDERS.values():
        assert np.all(np.diff(ladder.values) < 0)


@pytest.mark.parametrize("n", [1, 2, 30])
def test_budget_equal_totals(n):
    sto = RunBudget.for_solver(SolverKind.STOCHASTIC, n)
    det = RunBudget.for_solver("deterministic", n)
    assert (sto.v, sto.runs, sto.per_run_budget, sto.multiplier) == (100 * n, 10, 100 * n, 1)
    assert (det.runs, det.per_run_budget, det.multiplier) == (1, 1000 * n, 10)
    assert sto.total == det.total == 1000 * n
    with pytest.raises(ConfigurationError):
        RunBudget.for_solver("stochastic", n, budget_factor=0)


def test_empty_stream_never_hits():
    records = record_run("T", "s", 0, [], STAIRS_REF, FRAME)
    assert len(records) == 4 * N_TARGETS
    assert all(r.fe is None for r in records)


def test_reaching_reference_set_hits_everything():
    stream = [(fe, p) for fe, p in enumerate(STAIRS_REF.points, 1)]
    records = record_run("T", "s", 0, stream, STAIRS_REF, FRAME)
    assert all(r.fe is not None and r.fe <= 5 for r in records)


def test_three_point_stream():
    # hv_diff: 0.375 - 0.01, then 0.375 - 0.25 = 0.125 <= 10^-0.8, then 0.0625
    stream = [(1, (0.9, 0.9)), (2, (0.5, 0.5)), (3, (0.25, 0.75))]
    hv = hits(record_run("T", "s", 0, stream, STAIRS_REF, FRAME), IndicatorKind.HV_DIFF)
    assert hv[0] == 2
    targets = LADDERS[IndicatorKind.HV_DIFF].values
    for k, fe in enumerate(hv):
        if targets[k] >= 0.125:
            assert fe == 2
        elif targets[k] >= 0.0625:
            assert fe == 3
        else:
            assert fe is None


def test_out_of_order_and_over_budget():
    with pytest.raises(ProtocolError):
        record_run("T", "s", 0, [(2, (0.5, 0.5)), (2, (0.4, 0.6))], STAIRS_REF, FRAME)
    with pytest.raises(ProtocolError):
        record_run("T", "s", 0, [(1, (0.5, 0.5)), (4, (0.4, 0.6))], STAIRS_REF, FRAME, budget=3)


@pytest.mark.parametrize("seed", range(20))
def test_incremental_matches_full_recompute(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 5))
    ref = nondominated_filter(rng.random((40, m)))
    refset = ReferenceSet("T", ref)
    frame = refset.frame()
    # shrink towards the front over time so that both acceptances and removals happen
    pts = rng.random((150, m)) * np.linspace(1.6, 0.9, 150)[:, None]
    stream = list(enumerate(pts, 1))
    fast = record_run("T", "s", seed, stream, refset, frame)
    slow = record_run("T", "s", seed, stream, refset, frame, incremental=False)
    assert fast == slow


runtimes = st.one_of(st.none(), st.integers(1, 10**6))


@settings(max_examples=200)
@given(st.lists(runtimes, min_size=1, max_size=10))
def test_best_of_runs_is_min(fes):
    recs = [FirstHitRecord("P", "s", i, IndicatorKind.IGD, 3, 0.1, fe) for i, fe in enumerate(fes)]
    best = best_of_runs(recs)
    hit = [f for f in fes if f is not None]
    assert best.fe == (min(hit) if hit else None)


def test_best_of_runs_examples_and_key_mismatch():
    def rec(fe, run=0, target=0):
        return FirstHitRecord("P", "s", run, IndicatorKind.GD, target, 0.5, fe)

    assert best_of_runs([rec(120, 0), rec(80, 1), rec(None, 2)]).fe == 80
    assert best_of_runs([rec(None, 0), rec(None, 1)]).fe is None
    assert best_of_runs([rec(500)]).fe == 500
    with pytest.raises(KeyError):
        best_of_runs([rec(1, target=0), rec(1, target=1)])


def test_merge_best_of_runs_groups_by_key():
    a = record_run("T", "s", 0, [(1, (0.5, 0.5))], STAIRS_REF, FRAME)
    b = record_run("T", "s", 1, [(1, (0.9, 0.9)), (2, (0.25, 0.75)), (3, (0.5, 0.5))], STAIRS_REF, FRAME)
    merged = merge_best_of_runs(a + b)
    assert len(merged) == 4 * N_TARGETS
    by_key = {r.key: r for r in merged}
    for ra, rb in zip(a, b):
        want = [f for f in (ra.fe, rb.fe) if f is not None]
        assert by_key[ra.key].fe == (min(want) if want else None)


def test_first_hits_monotone_in_target_index():
    rng = np.random.default_rng(0)
    refset = ReferenceSet("T", nondominated_filter(rng.random((30, 3))))
    stream = list(enumerate(rng.random((300, 3)) * 1.3, 1))
    records = record_run("T", "s", 0, stream, refset, refset.frame())
    for kind in INDICATORS:
        fes = hits(records, kind)
        seen_never = False
        last = 0
        for fe in fes:
            if fe is None:
                seen_never = True
                continue
            assert not seen_never and fe >= last
            last = fe


def test_first_hit_csv_round_trip(tmp_path):
    stream = [(1, (0.9, 0.9)), (2, (0.5, 0.5)), (3, (0.25, 0.75))]
    records = record_run("T", "s", 4, stream, STAIRS_REF, FRAME)
    path = tmp_path / "firsthits_s.csv"
    write_first_hits(path, records)
    text = path.read_text()
    assert text.splitlines()[0] == "problem,solver,run,indicator,target_index,target_value,fe"
    assert ",HvDiff,69,0.001," in text  # never -> empty field
    back = read_first_hits(path)
    assert sorted(back, key=lambda r: (r.indicator.value, r.target_index)) == sorted(
        records, key=lambda r: (r.indicator.value, r.target_index)
    )
    assert format_first_hits(back) == text
