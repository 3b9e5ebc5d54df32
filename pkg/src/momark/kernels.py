"""Hot numeric kernels with two interchangeable backends.

Every kernel exists twice: a ``*_nb`` version compiled with ``numba.njit`` and a
pure-numpy ``*_np`` version. The public dispatchers at the bottom of the module
pick one according to :data:`USE_NUMBA`, which is true when numba imports and
the environment variable ``MOMARK_DISABLE_NUMBA`` is unset (or ``0``).

Inputs are assumed already validated by the callers: float64, C-contiguous,
finite. Hypervolume kernels assume every point is strictly below the reference
point in all coordinates.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _env_disabled() -> bool:
    return os.environ.get("MOMARK_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


USE_NUMBA = HAVE_NUMBA and not _env_disabled()


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# Hypervolume, numpy backend
# ---------------------------------------------------------------------------


def hv2d_np(points: np.ndarray, ref: np.ndarray) -> float:
    if points.shape[0] == 0:
        return 0.0
    order = np.lexsort((points[:, 1], points[:, 0]))
    x = points[order, 0]
    y = np.minimum.accumulate(points[order, 1])
    widths = np.diff(np.append(x, ref[0]))
    return float(np.sum(widths * (ref[1] - y)))


def hv3d_np(points: np.ndarray, ref: np.ndarray) -> float:
    n = points.shape[0]
    if n == 0:
        return 0.0
    order = np.argsort(points[:, 2], kind="stable")
    z = np.append(points[order, 2], ref[2])
    vol = 0.0
    for i in range(n):
        h = z[i + 1] - z[i]
        if h > 0.0:
            vol += hv2d_np(points[order[: i + 1], :2], ref[:2]) * h
    return float(vol)


def hv4d_np(points: np.ndarray, ref: np.ndarray) -> float:
    n = points.shape[0]
    if n == 0:
        return 0.0
    order = np.argsort(points[:, 3], kind="stable")
    w = np.append(points[order, 3], ref[3])
    vol = 0.0
    for i in range(n):
        h = w[i + 1] - w[i]
        if h > 0.0:
            vol += hv3d_np(points[order[: i + 1], :3], ref[:3]) * h
    return float(vol)


# ---------------------------------------------------------------------------
# Hypervolume, numba backend
# ---------------------------------------------------------------------------


@_njit
def hv2d_nb(points, ref):
    n = points.shape[0]
    if n == 0:
        return 0.0
    order = np.argsort(points[:, 0], kind="mergesort")
    area = 0.0
    best_y = ref[1]
    for idx in range(n):
        i = order[idx]
        if points[i, 1] < best_y:
            best_y = points[i, 1]
        x_next = ref[0] if idx + 1 == n else points[order[idx + 1], 0]
        area += (x_next - points[i, 0]) * (ref[1] - best_y)
    return area


@_njit
def _hv3d_sorted_nb(points, order, count, ref):
    # 2-D staircase of the points seen so far: xs ascending, ys strictly descending.
    xs = np.empty(count)
    ys = np.empty(count)
    tx = np.empty(count)
    ty = np.empty(count)
    k = 0
    vol = 0.0
    for idx in range(count):
        i = order[idx]
        px = points[i, 0]
        py = points[i, 1]
        dominated = False
        for j in range(k):
            if xs[j] <= px and ys[j] <= py:
                dominated = True
                break
        if not dominated:
            nk = 0
            placed = False
            for j in range(k):
                if xs[j] >= px and ys[j] >= py:
                    continue
                if not placed and xs[j] > px:
                    tx[nk] = px
                    ty[nk] = py
                    nk += 1
                    placed = True
                tx[nk] = xs[j]
                ty[nk] = ys[j]
                nk += 1
            if not placed:
                tx[nk] = px
                ty[nk] = py
                nk += 1
            for j in range(nk):
                xs[j] = tx[j]
                ys[j] = ty[j]
            k = nk
        z_next = ref[2] if idx + 1 == count else points[order[idx + 1], 2]
        h = z_next - points[i, 2]
        if h > 0.0:
            area = 0.0
            for j in range(k):
                x_next = ref[0] if j + 1 == k else xs[j + 1]
                area += (x_next - xs[j]) * (ref[1] - ys[j])
            vol += area * h
    return vol


@_njit
def hv3d_nb(points, ref):
    n = points.shape[0]
    if n == 0:
        return 0.0
    order = np.argsort(points[:, 2], kind="mergesort")
    return _hv3d_sorted_nb(points, order, n, ref)


@_njit
def hv4d_nb(points, ref):
    n = points.shape[0]
    if n == 0:
        return 0.0
    order4 = np.argsort(points[:, 3], kind="mergesort")
    vol = 0.0
    for idx in range(n):
        w_next = ref[3] if idx + 1 == n else points[order4[idx + 1], 3]
        h = w_next - points[order4[idx], 3]
        if h > 0.0:
            sub = np.empty((idx + 1, 3))
            for j in range(idx + 1):
                for c in range(3):
                    sub[j, c] = points[order4[j], c]
            order3 = np.argsort(sub[:, 2], kind="mergesort")
            vol += _hv3d_sorted_nb(sub, order3, idx + 1, ref) * h
    return vol


# ---------------------------------------------------------------------------
# Non-dominated filtering
# ---------------------------------------------------------------------------


def nondominated_mask_np(points: np.ndarray, lex_order: np.ndarray) -> np.ndarray:
    n, m = points.shape
    keep = np.zeros(n, dtype=np.bool_)
    front = np.empty((n, m))
    k = 0
    for i in lex_order:
        p = points[i]
        if k and np.any(np.all(front[:k] <= p, axis=1)):
            continue
        front[k] = p
        k += 1
        keep[i] = True
    return keep


@_njit
def nondominated_mask_nb(points, lex_order):
    n, m = points.shape
    keep = np.zeros(n, dtype=np.bool_)
    front = np.empty(n, dtype=np.int64)
    k = 0
    for idx in range(n):
        i = lex_order[idx]
        dominated = False
        for f in range(k):
            j = front[f]
            weak = True
            for c in range(m):
                if points[j, c] > points[i, c]:
                    weak = False
                    break
            if weak:
                dominated = True
                break
        if not dominated:
            front[k] = i
            k += 1
            keep[i] = True
    return keep


# ---------------------------------------------------------------------------
# Distance-type indicator kernels
# ---------------------------------------------------------------------------

_CHUNK_ELEMS = 1 << 22


def _chunk(other: np.ndarray) -> int:
    # rows per block so that the broadcast temporary stays around 32 MB
    return max(1, _CHUNK_ELEMS // max(1, other.shape[0] * other.shape[1]))


def nearest_distance_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape[0])
    step = _chunk(b)
    for s in range(0, a.shape[0], step):
        diff = a[s : s + step, None, :] - b[None, :, :]
        out[s : s + step] = np.sqrt(np.min(np.sum(diff * diff, axis=2), axis=1))
    return out


@_njit
def nearest_distance_nb(a, b):
    na, m = a.shape
    nb_ = b.shape[0]
    out = np.empty(na)
    for i in range(na):
        best = np.inf
        for j in range(nb_):
            s = 0.0
            for c in range(m):
                d = a[i, c] - b[j, c]
                s += d * d
            if s < best:
                best = s
        out[i] = np.sqrt(best)
    return out


def nearest_index_np(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    dist = np.empty(a.shape[0])
    idx = np.empty(a.shape[0], dtype=np.int64)
    step = _chunk(b)
    for s in range(0, a.shape[0], step):
        diff = a[s : s + step, None, :] - b[None, :, :]
        sq = np.sum(diff * diff, axis=2)
        j = np.argmin(sq, axis=1)
        idx[s : s + step] = j
        dist[s : s + step] = np.sqrt(sq[np.arange(j.shape[0]), j])
    return dist, idx


@_njit
def nearest_index_nb(a, b):
    na, m = a.shape
    nb_ = b.shape[0]
    dist = np.empty(na)
    idx = np.empty(na, dtype=np.int64)
    for i in range(na):
        best = np.inf
        arg = 0
        for j in range(nb_):
            s = 0.0
            for c in range(m):
                d = a[i, c] - b[j, c]
                s += d * d
            if s < best:
                best = s
                arg = j
        dist[i] = np.sqrt(best)
        idx[i] = arg
    return dist, idx


def eps_shift_np(a: np.ndarray, r: np.ndarray) -> np.ndarray:
    out = np.empty(r.shape[0])
    step = _chunk(a)
    for s in range(0, r.shape[0], step):
        diff = a[None, :, :] - r[s : s + step, None, :]
        out[s : s + step] = np.min(np.max(diff, axis=2), axis=1)
    return out


@_njit
def eps_shift_nb(a, r):
    na, m = a.shape
    nr = r.shape[0]
    out = np.empty(nr)
    for j in range(nr):
        best = np.inf
        for i in range(na):
            worst = -np.inf
            for c in range(m):
                d = a[i, c] - r[j, c]
                if d > worst:
                    worst = d
            if worst < best:
                best = worst
        out[j] = best
    return out


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

BACKENDS = {
    "numpy": {
        2: hv2d_np,
        3: hv3d_np,
        4: hv4d_np,
        "nondominated": nondominated_mask_np,
        "nearest": nearest_distance_np,
        "nearest_index": nearest_index_np,
        "eps": eps_shift_np,
    },
    "numba": {
        2: hv2d_nb,
        3: hv3d_nb,
        4: hv4d_nb,
        "nondominated": nondominated_mask_nb,
        "nearest": nearest_distance_nb,
        "nearest_index": nearest_index_nb,
        "eps": eps_shift_nb,
    },
}


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _table() -> dict:
    return BACKENDS[backend_name()]


def hypervolume_kernel(points: np.ndarray, ref: np.ndarray) -> float:
    return float(_table()[points.shape[1]](points, ref))


def nondominated_mask(points: np.ndarray) -> np.ndarray:
    # lexsort is stable, so among exact duplicates the earliest input index wins
    lex_order = np.lexsort(points.T[::-1]).astype(np.int64)
    return _table()["nondominated"](points, lex_order)


def nearest_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance from each row of ``a`` to its nearest row of ``b``."""
    return _table()["nearest"](a, b)


def nearest_index(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`nearest_distance` but also returns the index of the nearest row."""
    return _table()["nearest_index"](a, b)


def eps_shift(a: np.ndarray, r: np.ndarray) -> np.ndarray:
    """For each row of ``r``, the smallest additive shift that lets some row of ``a`` weakly dominate it."""
    return _table()["eps"](a, r)
