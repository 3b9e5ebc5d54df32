"""Line-oriented ask-tell protocol for benchmarking solvers in a child process.

Harness to child::

    MOBENCH 1 <problem> <n> <m> <budget> <seed>
    L <l1> ... <ln>
    U <u1> ... <un>

then strictly alternating ``X <x1> ... <xn>`` (child) and ``F <f1> ... <fm>``
(harness) until the budget is spent, after which the harness sends ``STOP``.
An out-of-bounds request is answered with an ``ERROR`` line and aborts the
session.
"""

from __future__ import annotations

import logging
import shlex
import subprocess
from collections.abc import Iterator, Sequence

import numpy as np

from momark.errors import DomainError, ProtocolError
from momark.problems import ProblemInstance
from momark.runtime import Evaluation

log = logging.getLogger(__name__)

PROTOCOL_VERSION = 1
STOP_GRACE_SECONDS = 5.0


def format_floats(values) -> str:
    """Shortest round-trip decimal representation, single-space separated."""
    return " ".join(repr(float(v)) for v in values)


def greeting(problem: ProblemInstance, budget: int, seed: int) -> list[str]:
    meta = problem.meta
    return [
        f"MOBENCH {PROTOCOL_VERSION} {meta.name} {meta.n} {meta.m} {budget} {seed}",
        f"L {format_floats(meta.lower)}",
        f"U {format_floats(meta.upper)}",
    ]


def parse_request(line: str, n: int, line_no: int) -> np.ndarray:
    tokens = line.split()
    if not tokens or tokens[0] != "X":
        raise ProtocolError(f"expected 'X <x1> ... <x{n}>', got {line.rstrip()!r}", line_no)
    if len(tokens) != n + 1:
        raise ProtocolError(f"X line has {len(tokens) - 1} values, problem has n={n}", line_no)
    try:
        return np.array([float(t) for t in tokens[1:]])
    except ValueError as exc:
        raise ProtocolError(f"unparseable number in {line.rstrip()!r}", line_no) from exc


class ExternalSession:
    """One child process driven through a single run."""

    def __init__(self, command: Sequence[str] | str, problem: ProblemInstance, budget: int, seed: int):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.problem = problem
        self.budget = budget
        self.seed = seed
        self.truncated = False
        self.consumed = 0
        self._proc: subprocess.Popen | None = None

    def _send(self, line: str) -> bool:
        try:
            self._proc.stdin.write(line + "\n")
            self._proc.stdin.flush()
            return True
        except (BrokenPipeError, OSError):
            return False

    def __iter__(self) -> Iterator[Evaluation]:
        problem, n = self.problem, self.problem.meta.n
        self._proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            encoding="utf-8",
            bufsize=1,
        )
        try:
            for line in greeting(problem, self.budget, self.seed):
                self._send(line)
            line_no = 0
            while self.consumed < self.budget:
                line = self._proc.stdout.readline()
                if line == "":
                    self.truncated = True
                    log.warning(
                        "solver %s exited after %d of %d evaluations on %s",
                        self.command[0],
                        self.consumed,
                        self.budget,
                        problem.name,
                    )
                    return
                line_no += 1
                x = parse_request(line, n, line_no)
                try:
                    x = problem.check_domain(x)
                except DomainError as exc:
                    self._send(f"ERROR domain {exc}")
                    raise
                f = problem.evaluate(x)
                self.consumed += 1
                if not self._send(f"F {format_floats(f)}") and self.consumed < self.budget:
                    self.truncated = True
                    log.warning("solver %s closed its input early on %s", self.command[0], problem.name)
                    yield Evaluation(self.consumed, x, f)
                    return
                yield Evaluation(self.consumed, x, f)
            self._send("STOP")
        finally:
            self._shutdown()

    def _shutdown(self) -> None:
        proc = self._proc
        if proc is None:
            return
        try:
            proc.stdin.close()
        except OSError:
            pass
        try:
            proc.wait(timeout=STOP_GRACE_SECONDS)
        except subprocess.TimeoutExpired:
            log.warning("killing solver %s after %.0fs grace period", self.command[0], STOP_GRACE_SECONDS)
            proc.kill()
            proc.wait()
        if proc.stdout is not None:
            proc.stdout.close()


def external_solver_session(command, problem: ProblemInstance, budget: int, seed: int) -> Iterator[Evaluation]:
    return iter(ExternalSession(command, problem, budget, seed))
