"""Baseline solvers used to exercise the harness.

Each solver is written as an ask-tell generator (yield a decision vector,
receive its objective vector) and driven by :func:`drive`, which owns the
evaluation counter. Solvers never see objective values they did not pay for.
"""

from __future__ import annotations

from collections.abc import Generator, Iterator

import numpy as np

from momark.core import dominates
from momark.problems import ProblemInstance
from momark.runtime import Evaluation

Proposer = Generator[np.ndarray, np.ndarray, None]


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the only randomness source of the builtin solvers."""
    return np.random.Generator(np.random.PCG64(seed))


def drive(problem: ProblemInstance, budget: int, proposer: Proposer) -> Iterator[Evaluation]:
    if budget < 1:
        proposer.close()
        return
    fe = 0
    x = next(proposer)
    while True:
        f = problem.evaluate(x)
        fe += 1
        yield Evaluation(fe, x, f)
        if fe >= budget:
            proposer.close()
            return
        x = proposer.send(f)


def _random_proposer(problem: ProblemInstance, rng: np.random.Generator) -> Proposer:
    lo, hi = problem.lower, problem.upper
    while True:
        yield rng.uniform(lo, hi)


def random_search(problem: ProblemInstance, budget: int, seed: int) -> Iterator[Evaluation]:
    """I.i.d. uniform samples in the problem box."""
    return drive(problem, budget, _random_proposer(problem, make_rng(seed)))


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return primes


def halton(count: int, dim: int, start: int = 1) -> np.ndarray:
    """First ``count`` Halton points in ``[0, 1)^dim``, indices from ``start`` on."""
    out = np.zeros((count, dim))
    for d, base in enumerate(first_primes(dim)):
        idx = np.arange(start, start + count, dtype=np.int64)
        scale = 1.0 / base
        col = np.zeros(count)
        while np.any(idx > 0):
            col += scale * (idx % base)
            idx //= base
            scale /= base
        out[:, d] = col
    return out


def _grid_proposer(problem: ProblemInstance, budget: int) -> Proposer:
    lo, hi = problem.lower, problem.upper
    unit = halton(budget, problem.meta.n)
    for row in unit:
        yield lo + row * (hi - lo)


def grid_sweep(problem: ProblemInstance, budget: int) -> Iterator[Evaluation]:
    """Deterministic Halton sweep of the box (bases are the first n primes)."""
    if budget < 1:
        return iter(())
    return drive(problem, budget, _grid_proposer(problem, budget))


def reflect(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Fold ``x`` back into ``[lo, hi]`` by mirror reflection at the bounds."""
    width = hi - lo
    safe = np.where(width > 0, width, 1.0)
    t = np.mod(x - lo, 2.0 * safe)
    y = lo + safe - np.abs(t - safe)
    y = np.where(width > 0, y, lo)
    return np.clip(y, lo, hi)


def _hillclimb_proposer(
    problem: ProblemInstance, rng: np.random.Generator, step_scale: float, decay: float = 1.0
) -> Proposer:
    lo, hi = problem.lower, problem.upper
    sigma = step_scale * (hi - lo)
    incumbent = rng.uniform(lo, hi)
    f_inc = yield incumbent
    while True:
        trial = reflect(incumbent + sigma * rng.standard_normal(incumbent.shape[0]), lo, hi)
        sigma = sigma * decay
        f_trial = yield trial
        if not dominates(f_inc, f_trial):
            incumbent, f_inc = trial, f_trial


def dominance_hillclimber(
    problem: ProblemInstance,
    budget: int,
    seed: int,
    step_scale: float = 0.1,
    *,
    final_step_scale: float | None = None,
) -> Iterator[Evaluation]:
    """(1+1) local search: Gaussian steps, keep the trial unless the incumbent dominates it.

    Args:
        problem: Problem to sample.
        budget: Number of evaluations.
        seed: PCG64 seed.
        step_scale: Step standard deviation as a fraction of each box width.
        final_step_scale: If given, the step shrinks geometrically from
            ``step_scale`` to this value over the budget. Left unset, the step
            is constant, which is how the solver is benchmarked.
    """
    if not 0.0 < step_scale <= 1.0:
        raise ValueError(f"step_scale must lie in (0, 1], got {step_scale}")
    decay = 1.0
    if final_step_scale is not None:
        if not 0.0 < final_step_scale <= step_scale:
            raise ValueError(f"final_step_scale must lie in (0, step_scale], got {final_step_scale}")
        decay = (final_step_scale / step_scale) ** (1.0 / max(budget - 2, 1))
    return drive(problem, budget, _hillclimb_proposer(problem, make_rng(seed), step_scale, decay))
