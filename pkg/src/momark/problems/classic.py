"""Low-dimensional classic test problems (minimization form).

Problems originally stated as maximization (SK1, SK2) are negated. Each
function takes a 1-D decision vector and returns the objective vector.
"""

from __future__ import annotations

import math

import numpy as np

PI = math.pi


def bk1(x):
    return np.array([x[0] ** 2 + x[1] ** 2, (x[0] - 5.0) ** 2 + (x[1] - 5.0) ** 2])


def dg01(x):
    return np.array([math.sin(x[0]), math.sin(x[0] + 0.7)])


# Fixed 10x10 rotation for DPAM1, generated once from a seeded Gaussian
# matrix (QR with sign correction) so that it is reproducible everywhere.
def _rotation(n: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


_DPAM1_ROTATION = _rotation(10, 20050101)


def dpam1(x):
    y = _DPAM1_ROTATION @ x
    n = y.shape[0]
    g = 1.0 + 10.0 * (n - 1) + float(np.sum(y[1:] ** 2 - 10.0 * np.cos(4.0 * PI * y[1:])))
    return np.array([y[0], g * math.exp(-y[0] / g)])


def far1(x):
    x1, x2 = x[0], x[1]
    e = math.exp
    f1 = (
        -2.0 * e(15.0 * (-((x1 - 0.1) ** 2) - x2**2))
        - e(20.0 * (-((x1 - 0.6) ** 2) - (x2 - 0.6) ** 2))
        + e(20.0 * (-((x1 + 0.6) ** 2) - (x2 - 0.6) ** 2))
        + e(20.0 * (-((x1 - 0.6) ** 2) - (x2 + 0.6) ** 2))
        + e(20.0 * (-((x1 + 0.6) ** 2) - (x2 + 0.6) ** 2))
    )
    f2 = (
        2.0 * e(20.0 * (-(x1**2) - x2**2))
        + e(20.0 * (-((x1 - 0.4) ** 2) - (x2 - 0.6) ** 2))
        - e(20.0 * (-((x1 + 0.5) ** 2) - (x2 - 0.7) ** 2))
        - e(20.0 * (-((x1 - 0.5) ** 2) - (x2 + 0.7) ** 2))
        + e(20.0 * (-((x1 + 0.4) ** 2) - (x2 + 0.8) ** 2))
    )
    return np.array([f1, f2])


def _fes_terms(x):
    n = x.shape[0]
    i = np.arange(1, n + 1, dtype=np.float64)
    return n, i


def fes1(x):
    n, i = _fes_terms(x)
    f1 = np.sum(np.abs(x - np.exp((i / n) ** 2) / 3.0) ** 0.5)
    f2 = np.sum((x - 0.5 * np.cos(10.0 * PI * i / n) - 0.5) ** 2)
    return np.array([f1, f2])


def fes2(x):
    n, i = _fes_terms(x)
    f1 = np.sum((x - 0.5 * np.cos(10.0 * PI * i / n) - 0.5) ** 2)
    f2 = np.sum(np.abs(x - np.sin(i - 1) ** 2 * np.cos(i - 1) ** 2) ** 0.5)
    f3 = np.sum(np.abs(x - 0.25 * np.cos(i - 1) * np.cos(2 * i - 2) - 0.5) ** 0.5)
    return np.array([f1, f2, f3])


def fes3(x):
    n, i = _fes_terms(x)
    f1 = np.sum(np.abs(x - np.exp((i / n) ** 2) / 3.0) ** 0.5)
    f2 = np.sum(np.abs(x - np.sin(i - 1) ** 2 * np.cos(i - 1) ** 2) ** 0.5)
    f3 = np.sum(np.abs(x - 0.25 * np.cos(i - 1) * np.cos(2 * i - 2) - 0.5) ** 0.5)
    f4 = np.sum((x - 0.5 * np.sin(1000.0 * PI * i / n) - 0.5) ** 2)
    return np.array([f1, f2, f3, f4])


def fonseca(x):
    f1 = 1.0 - math.exp(-((x[0] - 1.0) ** 2) - (x[1] + 1.0) ** 2)
    f2 = 1.0 - math.exp(-((x[0] + 1.0) ** 2) - (x[1] - 1.0) ** 2)
    return np.array([f1, f2])


def ikk1(x):
    return np.array([x[0] ** 2, (x[0] - 20.0) ** 2, x[1] ** 2])


def im1(x):
    return np.array([2.0 * math.sqrt(x[0]), x[0] * (1.0 - x[1]) + 5.0])


def kursawe(x):
    f1 = sum(-10.0 * math.exp(-0.2 * math.sqrt(x[i] ** 2 + x[i + 1] ** 2)) for i in range(x.shape[0] - 1))
    f2 = float(np.sum(np.abs(x) ** 0.8 + 5.0 * np.sin(x**3)))
    return np.array([f1, f2])


def lrs1(x):
    return np.array([x[0] ** 2 + x[1] ** 2, (x[0] + 2.0) ** 2 + x[1] ** 2])


def mhhm1(x):
    return np.array([(x[0] - 0.8) ** 2, (x[0] - 0.85) ** 2, (x[0] - 0.9) ** 2])


def mhhm2(x):
    x1, x2 = x[0], x[1]
    return np.array(
        [
            (x1 - 0.8) ** 2 + (x2 - 0.6) ** 2,
            (x1 - 0.85) ** 2 + (x2 - 0.7) ** 2,
            (x1 - 0.9) ** 2 + (x2 - 0.6) ** 2,
        ]
    )


def mlf1(x):
    s = 1.0 + x[0] / 20.0
    return np.array([s * math.sin(x[0]), s * math.cos(x[0])])


def mlf2(x):
    x1, x2 = x[0], x[1]
    f1 = -(5.0 - ((x1**2 + x2 - 11.0) ** 2 + (x1 + x2**2 - 7.0) ** 2) / 200.0)
    f2 = -(5.0 - ((4.0 * x1**2 + 2.0 * x2 - 11.0) ** 2 + (2.0 * x1 + 4.0 * x2**2 - 7.0) ** 2) / 200.0)
    return np.array([f1, f2])


def mop1(x):
    return np.array([x[0] ** 2, (x[0] - 2.0) ** 2])


def mop2(x):
    c = 1.0 / math.sqrt(x.shape[0])
    return np.array([1.0 - math.exp(-np.sum((x - c) ** 2)), 1.0 - math.exp(-np.sum((x + c) ** 2))])


_A1 = 0.5 * math.sin(1) - 2 * math.cos(1) + math.sin(2) - 1.5 * math.cos(2)
_A2 = 1.5 * math.sin(1) - math.cos(1) + 2 * math.sin(2) - 0.5 * math.cos(2)


def mop3(x):
    x1, x2 = x[0], x[1]
    b1 = 0.5 * math.sin(x1) - 2 * math.cos(x1) + math.sin(x2) - 1.5 * math.cos(x2)
    b2 = 1.5 * math.sin(x1) - math.cos(x1) + 2 * math.sin(x2) - 0.5 * math.cos(x2)
    f1 = 1.0 + (_A1 - b1) ** 2 + (_A2 - b2) ** 2
    f2 = (x1 + 3.0) ** 2 + (x2 + 1.0) ** 2
    return np.array([f1, f2])


def mop4(x):
    f1 = sum(-10.0 * math.exp(-0.2 * math.sqrt(x[i] ** 2 + x[i + 1] ** 2)) for i in range(x.shape[0] - 1))
    f2 = float(np.sum(np.abs(x) ** 0.8 + 5.0 * np.sin(x) ** 3))
    return np.array([f1, f2])


def mop5(x):
    x1, x2 = x[0], x[1]
    r2 = x1**2 + x2**2
    f1 = 0.5 * r2 + math.sin(r2)
    f2 = (3.0 * x1 - 2.0 * x2 + 4.0) ** 2 / 8.0 + (x1 - x2 + 1.0) ** 2 / 27.0 + 15.0
    f3 = 1.0 / (r2 + 1.0) - 1.1 * math.exp(-r2)
    return np.array([f1, f2, f3])


def mop6(x):
    x1, x2 = x[0], x[1]
    g = 1.0 + 10.0 * x2
    r = x1 / g
    return np.array([x1, g * (1.0 - r**2 - r * math.sin(8.0 * PI * x1))])


def mop7(x):
    x1, x2 = x[0], x[1]
    f1 = (x1 - 2.0) ** 2 / 2.0 + (x2 + 1.0) ** 2 / 13.0 + 3.0
    f2 = (x1 + x2 - 3.0) ** 2 / 36.0 + (-x1 + x2 + 2.0) ** 2 / 8.0 - 17.0
    f3 = (x1 + 2.0 * x2 - 1.0) ** 2 / 175.0 + (2.0 * x2 - x1) ** 2 / 17.0 - 13.0
    return np.array([f1, f2, f3])


def qv1(x):
    n = x.shape[0]
    s1 = np.sum(x**2 - 10.0 * np.cos(2.0 * PI * x) + 10.0) / n
    z = x - 1.5
    s2 = np.sum(z**2 - 10.0 * np.cos(2.0 * PI * z) + 10.0) / n
    return np.array([s1**0.25, s2**0.25])


def sch1(x):
    v = x[0]
    if v <= 1.0:
        f1 = -v
    elif v <= 3.0:
        f1 = v - 2.0
    elif v <= 4.0:
        f1 = 4.0 - v
    else:
        f1 = v - 4.0
    return np.array([f1, (v - 5.0) ** 2])


def sk1(x):
    v = x[0]
    f1 = -(-(v**4) - 3.0 * v**3 + 10.0 * v**2 + 10.0 * v + 10.0)
    f2 = -(-0.5 * v**4 + 2.0 * v**3 + 10.0 * v**2 - 10.0 * v + 5.0)
    return np.array([f1, f2])


def sk2(x):
    f1 = -(-((x[0] - 2.0) ** 2) - (x[1] + 3.0) ** 2 - (x[2] - 5.0) ** 2 - (x[3] - 4.0) ** 2 + 5.0)
    f2 = -(float(np.sum(np.sin(x))) / (1.0 + float(np.sum(x**2)) / 100.0))
    return np.array([f1, f2])


def sp1(x):
    x1, x2 = x[0], x[1]
    return np.array([(x1 - 1.0) ** 2 + (x1 - x2) ** 2, (x2 - 3.0) ** 2 + (x1 - x2) ** 2])


def ssfyy1(x):
    x1, x2 = x[0], x[1]
    return np.array([x1**2 + x2**2, (x1 - 1.0) ** 2 + (x2 - 2.0) ** 2])


def ssfyy2(x):
    v = x[0]
    return np.array([10.0 + v**2 - 10.0 * math.cos(v * PI / 2.0), (v - 4.0) ** 2])


def vu1(x):
    x1, x2 = x[0], x[1]
    return np.array([1.0 / (x1**2 + x2**2 + 1.0), x1**2 + 3.0 * x2**2 + 1.0])


def vu2(x):
    x1, x2 = x[0], x[1]
    return np.array([x1 + x2 + 1.0, x1**2 + 2.0 * x2 - 1.0])


def zlt1(x, m: int = 3):
    sq = x**2
    total = float(np.sum(sq))
    return np.array([total - sq[j] + (x[j] - 1.0) ** 2 for j in range(m)])
