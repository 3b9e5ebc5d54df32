"""Compare the numba and numpy kernel backends.

Kernel timings call both backend tables directly in one process. The
end-to-end timing runs one recorded benchmark cell in a subprocess per
backend, switching with ``MOMARK_DISABLE_NUMBA``, so that the whole
pipeline (archive updates plus incremental indicators) is measured.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --points 50 200 1000 --repeat 3 --end-to-end
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from momark import kernels

CELL_SNIPPET = """
import time
from momark.experiment import generate_refset, run_cell
from momark.problems import registry_lookup
from momark.solvers import builtin_descriptor
p = registry_lookup({problem!r})
refset, frame, _ = generate_refset(p, budget_factor=10)
desc = builtin_descriptor("random_search")
run_cell(desc, p, 0, 0, 50, refset, frame)  # warm-up, includes JIT compilation
t0 = time.perf_counter()
run_cell(desc, p, 0, 1, {budget}, refset, frame)
print(time.perf_counter() - t0)
"""


def front_sample(rng: np.random.Generator, count: int, m: int) -> np.ndarray:
    v = np.abs(rng.standard_normal((count, m)))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def time_call(fn, repeat: int) -> float:
    """Best-of-``repeat`` seconds for one call."""
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases(rng: np.random.Generator, size: int):
    for m in (2, 3, 4):
        pts = front_sample(rng, size, m)
        ref = np.full(m, 1.1)
        yield f"hv m={m}", lambda b, pts=pts, ref=ref: b[pts.shape[1]](pts, ref)
    cloud = rng.random((size * 4, 3))
    order = np.lexsort(cloud.T[::-1]).astype(np.int64)
    yield "nondominated m=3", lambda b: b["nondominated"](cloud, order)
    a, r = front_sample(rng, size, 3), front_sample(rng, 500, 3)
    yield "nearest", lambda b: b["nearest"](a, r)
    yield "eps", lambda b: b["eps"](a, r)


def bench_kernels(sizes: list[int], repeat: int, seed: int) -> None:
    if not kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend can be timed")
        return
    print(f"{'kernel':<18}{'size':>6}{'numpy s':>12}{'numba s':>12}{'speedup':>9}")
    rng = np.random.default_rng(seed)
    for size in sizes:
        for label, call in kernel_cases(rng, size):
            np_table, nb_table = kernels.BACKENDS["numpy"], kernels.BACKENDS["numba"]
            call(nb_table)  # compile outside the timed region
            t_np = time_call(lambda: call(np_table), repeat)
            t_nb = time_call(lambda: call(nb_table), repeat)
            print(f"{label:<18}{size:>6}{t_np:>12.3e}{t_nb:>12.3e}{t_np / t_nb:>9.1f}")


def bench_end_to_end(problem: str, budget: int) -> None:
    code = CELL_SNIPPET.format(problem=problem, budget=budget)
    results = {}
    for backend, flag in (("numpy", "1"), ("numba", "0")):
        env = dict(os.environ, MOMARK_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        results[backend] = float(out.stdout.strip().splitlines()[-1])
    print(f"\nrecorded random-search cell on {problem}, {budget} fe")
    for backend, seconds in results.items():
        print(f"  {backend:<6}{seconds:10.3f} s")
    print(f"  speedup {results['numpy'] / results['numba']:.1f}x")


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, nargs="+", default=[50, 200], help="archive sizes")
    parser.add_argument("--repeat", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--end-to-end", action="store_true", help="also time one recorded cell per backend")
    parser.add_argument("--problem", default="DTLZ2")
    parser.add_argument("--budget", type=int, default=5000)
    args = parser.parse_args(argv)
    bench_kernels(args.points, args.repeat, args.seed)
    if args.end_to_end:
        bench_end_to_end(args.problem, args.budget)


if __name__ == "__main__":
    main()
