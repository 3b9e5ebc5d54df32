import logging
import sys
import textwrap

import numpy as np
import pytest

from momark.core import Archive
from momark.errors import ConfigurationError, DomainError, ProtocolError
from momark.experiment import generate_refset
from momark.indicators import hv_diff
from momark.problems import REGISTRY, registry_lookup
from momark.runtime import SolverKind
from momark.solvers import (
    ExternalSession,
    builtin_descriptor,
    dominance_hillclimber,
    grid_sweep,
    halton,
    parse_solver_spec,
    random_search,
)
from momark.solvers.builtin import first_primes, reflect
from momark.solvers.external import format_floats, greeting, parse_request

BK1 = registry_lookup("BK1")

# Observed when the fixture was frozen: hillclimber <= random search on 10/10 seeds.
MOP2_MIN_WINS = 7


def collect(stream):
    evs = list(stream)
    return np.array([e.x for e in evs]), np.array([e.f for e in evs]), [e.fe for e in evs]


def in_bounds(problem, xs):
    return bool(np.all(xs >= problem.lower) and np.all(xs <= problem.upper))


def test_random_search_is_seeded():
    x1, f1, fe = collect(random_search(BK1, 200, 7))
    x2, f2, _ = collect(random_search(BK1, 200, 7))
    np.testing.assert_array_equal(x1, x2)
    np.testing.assert_array_equal(f1, f2)
    assert fe == list(range(1, 201))
    assert in_bounds(BK1, x1)
    assert not np.array_equal(x1, collect(random_search(BK1, 200, 8))[0])
    assert list(random_search(BK1, 0, 7)) == []


def test_halton_first_points():
    assert first_primes(5) == [2, 3, 5, 7, 11]
    pts = halton(4, 2)
    np.testing.assert_allclose(pts[0], [0.5, 1 / 3], rtol=0, atol=1e-15)
    np.testing.assert_allclose(pts[1], [0.25, 2 / 3], rtol=0, atol=1e-15)
    np.testing.assert_allclose(pts[2], [0.75, 1 / 9], rtol=0, atol=1e-15)


def test_grid_sweep_is_deterministic_and_in_bounds():
    p = registry_lookup("ZDT4")
    x1, _, _ = collect(grid_sweep(p, 300))
    x2, _, _ = collect(grid_sweep(p, 300))
    np.testing.assert_array_equal(x1, x2)
    assert x1.shape == (300, 10) and in_bounds(p, x1)
    x_bk, _, _ = collect(grid_sweep(BK1, 1))
    np.testing.assert_allclose(x_bk[0], BK1.lower + np.array([0.5, 1 / 3]) * (BK1.upper - BK1.lower))


def test_hillclimber_seeded_and_in_bounds():
    p = registry_lookup("WFG1")
    x1, f1, _ = collect(dominance_hillclimber(p, 500, 3))
    x2, f2, _ = collect(dominance_hillclimber(p, 500, 3))
    np.testing.assert_array_equal(x1, x2)
    assert in_bounds(p, x1)
    with pytest.raises(ValueError):
        dominance_hillclimber(p, 10, 0, step_scale=0.0)
    with pytest.raises(ValueError):
        dominance_hillclimber(p, 10, 0, step_scale=1.5)


def test_annealed_hillclimber_reaches_wide_box_front():
    p = registry_lookup("MOP1")  # x in [-1e5, 1e5], front for x in [0, 2]
    x, _, _ = collect(dominance_hillclimber(p, 2000, 0, final_step_scale=1e-6))
    assert 0.0 <= x[-1, 0] <= 2.0


def test_reflect():
    lo, hi = np.array([0.0, -1.0]), np.array([1.0, 1.0])
    np.testing.assert_allclose(reflect(np.array([1.25, -1.5]), lo, hi), [0.75, -0.5])
    np.testing.assert_allclose(reflect(np.array([-0.25, 3.5]), lo, hi), [0.25, -0.5])
    np.testing.assert_allclose(reflect(np.array([0.5, 0.0]), lo, hi), [0.5, 0.0])


def test_hillclimber_beats_random_search_on_mop2():
    p = registry_lookup("MOP2")
    refset, frame, _ = generate_refset(p, seed=0)

    def final_hv_diff(stream):
        archive = Archive(2)
        for ev in stream:
            archive.insert(ev.f, ev.fe)
        return hv_diff(archive.points, refset, frame)

    wins = sum(
        final_hv_diff(dominance_hillclimber(p, 400, s)) <= final_hv_diff(random_search(p, 400, s)) for s in range(10)
    )
    assert wins >= MOP2_MIN_WINS


def test_solver_specs():
    assert builtin_descriptor("grid_sweep").kind is SolverKind.DETERMINISTIC
    assert parse_solver_spec("random_search").kind is SolverKind.STOCHASTIC
    ext = parse_solver_spec("mine:deterministic:python3 -u child.py --flag 'a b'")
    assert ext.command == ("python3", "-u", "child.py", "--flag", "a b")
    assert parse_solver_spec(ext.spec()) == ext
    for bad in ("nope", "random_search:deterministic", "x:sometimes:cmd", "ext::cmd"):
        with pytest.raises(ConfigurationError):
            parse_solver_spec(bad)


def test_wire_formatting():
    assert format_floats([0.1, 1e-300, -2.0]) == "0.1 1e-300 -2.0"
    lines = greeting(BK1, 20, 5)
    assert lines[0] == "MOBENCH 1 BK1 2 2 20 5"
    assert lines[1] == "L -5.0 -5.0" and lines[2] == "U 10.0 10.0"
    np.testing.assert_array_equal(parse_request("X 1.5 -2\n", 2, 1), [1.5, -2.0])
    with pytest.raises(ProtocolError, match="line 3"):
        parse_request("X 0.5\n", 2, 3)
    with pytest.raises(ProtocolError):
        parse_request("Y 0.5 0.5\n", 2, 1)
    with pytest.raises(ProtocolError):
        parse_request("X 0.5 abc\n", 2, 1)


CHILD_HEADER = """
import sys
head = sys.stdin.readline().split()
n = int(head[3]); budget = int(head[5])
lo = [float(v) for v in sys.stdin.readline().split()[1:]]
hi = [float(v) for v in sys.stdin.readline().split()[1:]]
def ask(x):
    print("X " + " ".join(repr(v) for v in x), flush=True)
    return sys.stdin.readline()
"""


def child(tmp_path, body, name="child.py"):
    path = tmp_path / name
    path.write_text(CHILD_HEADER + textwrap.dedent(body))
    return [sys.executable, str(path)]


def test_midpoint_child(tmp_path):
    cmd = child(
        tmp_path,
        """
        mid = [(a + b) / 2 for a, b in zip(lo, hi)]
        while True:
            reply = ask(mid)
            if not reply.startswith("F"):
                break
        """,
    )
    session = ExternalSession(cmd, BK1, 10, 0)
    xs, fs, fes = collect(session)
    assert fes == list(range(1, 11))
    np.testing.assert_array_equal(xs, np.tile([2.5, 2.5], (10, 1)))
    assert not session.truncated


def test_stop_is_sent_after_budget(tmp_path):
    log = tmp_path / "seen.txt"
    cmd = child(
        tmp_path,
        f"""
        seen = []
        for _ in range(budget):
            seen.append(ask(lo).split()[0])
        seen.append(sys.stdin.readline().strip())
        open({str(log)!r}, "w").write(" ".join(seen))
        """,
    )
    list(ExternalSession(cmd, BK1, 3, 0))
    assert log.read_text() == "F F F STOP"


def test_arity_error(tmp_path):
    cmd = child(tmp_path, 'print("X 0.5", flush=True)\nsys.stdin.readline()\n')
    with pytest.raises(ProtocolError, match="line 1"):
        list(ExternalSession(cmd, BK1, 5, 0))


def test_early_exit_truncates_with_warning(tmp_path, caplog):
    cmd = child(tmp_path, "for _ in range(3):\n    ask(lo)\n")
    session = ExternalSession(cmd, BK1, 10, 0)
    with caplog.at_level(logging.WARNING):
        _, _, fes = collect(session)
    assert fes == [1, 2, 3]
    assert session.truncated
    assert any("3 of 10" in rec.getMessage() for rec in caplog.records)


def test_out_of_bounds_request_relayed(tmp_path):
    log = tmp_path / "reply.txt"
    cmd = child(
        tmp_path,
        f"""
        reply = ask([hi[0] + 1.0, hi[1]])
        open({str(log)!r}, "w").write(reply)
        """,
    )
    with pytest.raises(DomainError):
        list(ExternalSession(cmd, BK1, 5, 0))
    assert log.read_text().startswith("ERROR domain")


def test_replay_round_trip(tmp_path):
    p = registry_lookup("ZDT1")
    reference = list(random_search(p, 25, 11))
    data = tmp_path / "points.txt"
    data.write_text("\n".join(format_floats(ev.x) for ev in reference) + "\n")
    cmd = child(
        tmp_path,
        f"""
        for line in open({str(data)!r}):
            ask([float(v) for v in line.split()])
        """,
    )
    replayed = list(ExternalSession(cmd, p, 25, 0))
    assert len(replayed) == 25
    for a, b in zip(reference, replayed):
        assert a.fe == b.fe
        np.testing.assert_array_equal(a.x, b.x)
        np.testing.assert_array_equal(a.f, b.f)


def test_every_builtin_emits_budget_in_bounds_points():
    for name in ("SK1", "DTLZ6", "FES3"):
        p = REGISTRY.lookup(name)
        for stream in (random_search(p, 57, 1), grid_sweep(p, 57), dominance_hillclimber(p, 57, 1)):
            xs, _, fes = collect(stream)
            assert len(fes) == 57 and in_bounds(p, xs)
