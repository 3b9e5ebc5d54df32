"""ZDT and DTLZ families.

DTLZ functions take the objective count ``m`` explicitly; the position/distance
split is ``k = n - m + 1``. ``dtlz6`` is the disconnected-front problem (the one
instantiated with ``n = m + 19``).
"""

from __future__ import annotations

import math

import numpy as np

HALF_PI = 0.5 * math.pi


def zdt1(x):
    n = x.shape[0]
    f1 = x[0]
    g = 1.0 + 9.0 * float(np.sum(x[1:])) / (n - 1)
    return np.array([f1, g * (1.0 - math.sqrt(f1 / g))])


def zdt2(x):
    n = x.shape[0]
    f1 = x[0]
    g = 1.0 + 9.0 * float(np.sum(x[1:])) / (n - 1)
    return np.array([f1, g * (1.0 - (f1 / g) ** 2)])


def zdt3(x):
    n = x.shape[0]
    f1 = x[0]
    g = 1.0 + 9.0 * float(np.sum(x[1:])) / (n - 1)
    r = f1 / g
    return np.array([f1, g * (1.0 - math.sqrt(r) - r * math.sin(10.0 * math.pi * f1))])


def zdt4(x):
    n = x.shape[0]
    f1 = x[0]
    tail = x[1:]
    g = 1.0 + 10.0 * (n - 1) + float(np.sum(tail**2 - 10.0 * np.cos(4.0 * math.pi * tail)))
    return np.array([f1, g * (1.0 - math.sqrt(f1 / g))])


def zdt6(x):
    n = x.shape[0]
    f1 = 1.0 - math.exp(-4.0 * x[0]) * math.sin(6.0 * math.pi * x[0]) ** 6
    g = 1.0 + 9.0 * (float(np.sum(x[1:])) / (n - 1)) ** 0.25
    return np.array([f1, g * (1.0 - (f1 / g) ** 2)])


def _g_rastrigin(xm):
    return 100.0 * (xm.shape[0] + float(np.sum((xm - 0.5) ** 2 - np.cos(20.0 * math.pi * (xm - 0.5)))))


def _g_sphere(xm):
    return float(np.sum((xm - 0.5) ** 2))


def _linear_front(x, m, g):
    f = np.empty(m)
    for i in range(m):
        v = 0.5 * (1.0 + g)
        for j in range(m - 1 - i):
            v *= x[j]
        if i > 0:
            v *= 1.0 - x[m - 1 - i]
        f[i] = v
    return f


def _spherical_front(theta, m, g):
    # theta holds angles already scaled to [0, pi/2]
    f = np.empty(m)
    for i in range(m):
        v = 1.0 + g
        for j in range(m - 1 - i):
            v *= math.cos(theta[j])
        if i > 0:
            v *= math.sin(theta[m - 1 - i])
        f[i] = v
    return f


def dtlz1(x, m):
    return _linear_front(x, m, _g_rastrigin(x[m - 1 :]))


def dtlz2(x, m):
    return _spherical_front(x[: m - 1] * HALF_PI, m, _g_sphere(x[m - 1 :]))


def dtlz3(x, m):
    return _spherical_front(x[: m - 1] * HALF_PI, m, _g_rastrigin(x[m - 1 :]))


def dtlz4(x, m, alpha: float = 100.0):
    return _spherical_front(x[: m - 1] ** alpha * HALF_PI, m, _g_sphere(x[m - 1 :]))


def dtlz5(x, m):
    g = _g_sphere(x[m - 1 :])
    theta = np.empty(m - 1)
    theta[0] = x[0] * HALF_PI
    t = math.pi / (4.0 * (1.0 + g))
    for i in range(1, m - 1):
        theta[i] = t * (1.0 + 2.0 * g * x[i])
    return _spherical_front(theta, m, g)


def dtlz6(x, m):
    k = x.shape[0] - m + 1
    g = 1.0 + 9.0 / k * float(np.sum(x[m - 1 :]))
    f = np.empty(m)
    f[: m - 1] = x[: m - 1]
    h = m - float(np.sum(f[: m - 1] / (1.0 + g) * (1.0 + np.sin(3.0 * math.pi * f[: m - 1]))))
    f[m - 1] = (1.0 + g) * h
    return f
