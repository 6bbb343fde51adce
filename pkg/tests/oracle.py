"""High-precision reference computations, independent of the package code.

Everything here is written directly from the closed-form definitions with
``mpmath`` at 50 digits; the test suite freezes values produced by these
functions and re-derives them in ``test_oracle.py``.
"""
from mpmath import mp, mpf, cos, sin, pi, log, sqrt

mp.dps = 50


def r(n):
    return sqrt(1 / cos(pi / n))


def vertex(n, i):
    return (r(n) * cos(2 * pi * i / n), r(n) * sin(2 * pi * i / n))


def xlogx(p):
    return p * log(p) if p > 0 else mpf(0)


def H(p):
    return -xlogx(p) - xlogx(1 - p)


def line_params(a1, a2, b1, b2):
    """Parameters (t, u) with a1 + t (a2 - a1) = b1 + u (b2 - b1), by Cramer's rule."""
    d = (a2[0] - a1[0], a2[1] - a1[1])
    e = (b2[0] - b1[0], b2[1] - b1[1])
    w = (b1[0] - a1[0], b1[1] - a1[1])
    det = d[0] * (-e[1]) - (-e[0]) * d[1]
    t = (w[0] * (-e[1]) - (-e[0]) * w[1]) / det
    u = (d[0] * w[1] - w[0] * d[1]) / det
    return t, u


def eq5(n):
    a = sin(pi / (2 * n))
    return 2 * a**2 * log(2) + xlogx(1 - 4 * a**2) / 2 - xlogx(1 - 2 * a**2)


def eq6(n):
    a = sin(pi / (2 * n))
    s = 1 if n % 4 == 3 else -1
    return xlogx(1 - 2 * s * a) - (2 - 2 * s * a) * log(1 - s * a)


def omega_A(n):
    p, q = vertex(n, (n - 1) // 2), vertex(n, (n + 1) // 2)
    return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def omega_Q_params(n):
    """(weight of omega_A, fraction of the second chord from omega_1) for i = 0."""
    t, u = line_params(vertex(n, 0), omega_A(n), vertex(n, 1), vertex(n, (n + 1) // 2))
    return t, u


def omega_R_params(n):
    j = (n + 1) // 4 if n % 4 == 3 else (n - 1) // 4
    return line_params(vertex(n, 0), omega_A(n), vertex(n, j), vertex(n, n - j))


def omega_P_params(n):
    h = n // 2
    return line_params(vertex(n, 0), vertex(n, h), vertex(n, 1), vertex(n, h + 2))
