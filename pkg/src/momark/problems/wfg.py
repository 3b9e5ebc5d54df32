"""WFG toolkit problems WFG1-WFG9.

Decision variable ``z_i`` lives in ``[0, 2i]``. The position-related block has
``k`` variables and the distance-related block ``l = n - k``; objective ``j``
is scaled by ``2j``.
"""

from __future__ import annotations

import math

import numpy as np

HALF_PI = 0.5 * math.pi


def _clip01(v):
    return np.clip(v, 0.0, 1.0)


# -- transformations --------------------------------------------------------


def b_poly(y, alpha):
    return _clip01(y**alpha)


def b_flat(y, a, b, c):
    v = (
        a
        + np.minimum(0.0, np.floor(y - b)) * a * (b - y) / b
        - np.minimum(0.0, np.floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c)
    )
    return _clip01(v)


def b_param(y, u, a, b, c):
    expo = b + (c - b) * (a - (1.0 - 2.0 * u) * np.abs(np.floor(0.5 - u) + a))
    return _clip01(y**expo)


def s_linear(y, a):
    return _clip01(np.abs(y - a) / np.abs(np.floor(a - y) + a))


def s_decept(y, a, b, c):
    t1 = np.floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b)
    t2 = np.floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b)
    return _clip01(1.0 + (np.abs(y - a) - b) * (t1 + t2 + 1.0 / b))


def s_multi(y, a, b, c):
    t = np.abs(y - c) / (2.0 * (np.floor(c - y) + c))
    v = (1.0 + np.cos((4.0 * a + 2.0) * math.pi * (0.5 - t)) + 4.0 * b * t**2) / (b + 2.0)
    return _clip01(v)


def r_sum(y, w):
    return float(np.clip(np.dot(y, w) / np.sum(w), 0.0, 1.0))


def r_nonsep(y, a):
    size = y.shape[0]
    total = 0.0
    for j in range(size):
        total += y[j]
        for k in range(a - 1):
            total += abs(y[j] - y[(j + 1 + k) % size])
    half = math.ceil(a / 2.0)
    denom = size / a * half * (1.0 + 2.0 * a - 2.0 * half)
    return min(max(total / denom, 0.0), 1.0)


# -- shapes -----------------------------------------------------------------


def _linear(x, m):
    h = np.empty(m)
    for i in range(m):
        v = 1.0
        for j in range(m - 1 - i):
            v *= x[j]
        if i > 0:
            v *= 1.0 - x[m - 1 - i]
        h[i] = v
    return h


def _convex(x, m):
    h = np.empty(m)
    for i in range(m):
        v = 1.0
        for j in range(m - 1 - i):
            v *= 1.0 - math.cos(x[j] * HALF_PI)
        if i > 0:
            v *= 1.0 - math.sin(x[m - 1 - i] * HALF_PI)
        h[i] = v
    return h


def _concave(x, m):
    h = np.empty(m)
    for i in range(m):
        v = 1.0
        for j in range(m - 1 - i):
            v *= math.sin(x[j] * HALF_PI)
        if i > 0:
            v *= math.cos(x[m - 1 - i] * HALF_PI)
        h[i] = v
    return h


def _mixed(x1, alpha=1.0, a=5.0):
    tmp = 2.0 * a * math.pi
    return (1.0 - x1 - math.cos(tmp * x1 + HALF_PI) / tmp) ** alpha


def _disc(x1, alpha=1.0, beta=1.0, a=5.0):
    return 1.0 - x1**alpha * math.cos(a * x1**beta * math.pi) ** 2


# -- shared plumbing ----------------------------------------------------------


def _normalize(z):
    n = z.shape[0]
    return z / (2.0 * np.arange(1, n + 1))


def _group_reduce(y, m, k, reducer):
    """Reduce the position block into ``m - 1`` groups and the distance block into one."""
    gap = k // (m - 1)
    t = np.empty(m)
    for i in range(m - 1):
        t[i] = reducer(y[i * gap : (i + 1) * gap], i * gap, (i + 1) * gap)
    t[m - 1] = reducer(y[k:], k, y.shape[0])
    return t


def _objectives(t, m, shape, degenerate=False):
    a = np.ones(m - 1)
    if degenerate:
        a[1:] = 0.0
    x = np.empty(m)
    for i in range(m - 1):
        x[i] = max(t[m - 1], a[i]) * (t[i] - 0.5) + 0.5
    x[m - 1] = t[m - 1]
    h = shape(x, m)
    scales = 2.0 * np.arange(1, m + 1)
    return x[m - 1] + scales * h


def _uniform(seg, lo, hi):
    return r_sum(seg, np.ones(seg.shape[0]))


def _wfg1_shape(x, m):
    h = _convex(x, m)
    h[m - 1] = _mixed(x[0], 1.0, 5.0)
    return h


def _wfg2_shape(x, m):
    h = _convex(x, m)
    h[m - 1] = _disc(x[0], 1.0, 1.0, 5.0)
    return h


def _pairwise_nonsep(y, k):
    # WFG2/3: distance block collapsed pairwise
    l = y.shape[0] - k
    out = np.empty(k + l // 2)
    out[:k] = y[:k]
    for i in range(l // 2):
        out[k + i] = r_nonsep(y[k + 2 * i : k + 2 * i + 2], 2)
    return out


# -- problems ------------------------------------------------------------------


def wfg1(z, m, k):
    n = z.shape[0]
    y = _normalize(z)
    y[k:] = s_linear(y[k:], 0.35)
    y[k:] = b_flat(y[k:], 0.8, 0.75, 0.85)
    y = b_poly(y, 0.02)
    w = 2.0 * np.arange(1, n + 1)
    t = _group_reduce(y, m, k, lambda seg, lo, hi: r_sum(seg, w[lo:hi]))
    return _objectives(t, m, _wfg1_shape)


def wfg2(z, m, k):
    y = _normalize(z)
    y[k:] = s_linear(y[k:], 0.35)
    y = _pairwise_nonsep(y, k)
    t = _group_reduce(y, m, k, _uniform)
    return _objectives(t, m, _wfg2_shape)


def wfg3(z, m, k):
    y = _normalize(z)
    y[k:] = s_linear(y[k:], 0.35)
    y = _pairwise_nonsep(y, k)
    t = _group_reduce(y, m, k, _uniform)
    return _objectives(t, m, _linear, degenerate=True)


def wfg4(z, m, k):
    y = s_multi(_normalize(z), 30.0, 10.0, 0.35)
    t = _group_reduce(y, m, k, _uniform)
    return _objectives(t, m, _concave)


def wfg5(z, m, k):
    y = s_decept(_normalize(z), 0.35, 0.001, 0.05)
    t = _group_reduce(y, m, k, _uniform)
    return _objectives(t, m, _concave)


def wfg6(z, m, k):
    y = _normalize(z)
    y[k:] = s_linear(y[k:], 0.35)
    t = _group_reduce(y, m, k, lambda seg, lo, hi: r_nonsep(seg, seg.shape[0]))
    return _objectives(t, m, _concave)


_PARAM = (0.98 / 49.98, 0.02, 50.0)


def wfg7(z, m, k):
    y0 = _normalize(z)
    y = y0.copy()
    for i in range(k):
        u = r_sum(y0[i + 1 :], np.ones(y0.shape[0] - i - 1))
        y[i] = b_param(y0[i], u, *_PARAM)
    y[k:] = s_linear(y[k:], 0.35)
    t = _group_reduce(y, m, k, _uniform)
    return _objectives(t, m, _concave)


def wfg8(z, m, k):
    y0 = _normalize(z)
    y = y0.copy()
    n = y0.shape[0]
    for i in range(k, n):
        u = r_sum(y0[:i], np.ones(i))
        y[i] = b_param(y0[i], u, *_PARAM)
    y[k:] = s_linear(y[k:], 0.35)
    t = _group_reduce(y, m, k, _uniform)
    return _objectives(t, m, _concave)


def wfg9(z, m, k):
    y0 = _normalize(z)
    n = y0.shape[0]
    y = y0.copy()
    for i in range(n - 1):
        u = r_sum(y0[i + 1 :], np.ones(n - i - 1))
        y[i] = b_param(y0[i], u, *_PARAM)
    y[:k] = s_decept(y[:k], 0.35, 0.001, 0.05)
    y[k:] = s_multi(y[k:], 30.0, 95.0, 0.35)
    t = _group_reduce(y, m, k, lambda seg, lo, hi: r_nonsep(seg, seg.shape[0]))
    return _objectives(t, m, _concave)
