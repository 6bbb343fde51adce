"""Affine geometry on the z = 1 plane and Shannon entropy.

States and effects of the polygon theories are 3-vectors; everything here
works on plain ``numpy`` arrays of shape ``(3,)``.
"""
from __future__ import annotations

import math
import os
from typing import NamedTuple, Sequence

import numpy as np

# Testing-only override, see README.
MEMBERSHIP_TOL = float(os.environ.get("NGON_ENTROPY_TOL", "1e-9"))
IDENTITY_TOL = 1e-10
WEIGHT_SUM_TOL = 1e-12


class GeometryError(ValueError):
    pass


class ChordSplit(NamedTuple):
    """Sub-lengths of a chord cut by a point; ``near`` is measured from the first endpoint."""

    near: float
    far: float

    @property
    def ratio(self) -> float:
        return self.near / (self.near + self.far)


def vec3(x, y=None, z=None) -> np.ndarray:
    if y is None:
        v = np.asarray(x, dtype=float).reshape(3)
    else:
        v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"non-finite vector {v!r}")
    return v


def inner(a, b) -> float:
    return float(np.dot(a, b))


def as_weights(w: Sequence[float], tol: float = WEIGHT_SUM_TOL) -> np.ndarray:
    """Validate a probability vector; tiny negative round-off is clamped to zero."""
    w = np.asarray(w, dtype=float).ravel()
    if w.size == 0:
        raise GeometryError("empty weight vector")
    if np.any(w < -tol) or not np.all(np.isfinite(w)):
        raise GeometryError(f"weights must be nonnegative, got {w.tolist()}")
    if abs(w.sum() - 1.0) > tol:
        raise GeometryError(f"weights sum to {w.sum()!r}, not 1 (tol {tol:g})")
    return np.clip(w, 0.0, None)


def convex_combine(points, weights) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) != len(weights):
        raise GeometryError(
            f"{len(points)} points but {len(weights)} weights"
        )
    return as_weights(weights) @ points


def chord_intersection(a1, a2, b1, b2, tol: float = MEMBERSHIP_TOL):
    """Intersect segments ``[a1, a2]`` and ``[b1, b2]`` lying in the z = 1 plane.

    Returns
    -------
    point : ndarray
        The unique intersection point.
    split_a, split_b : ChordSplit
        Euclidean sub-lengths induced on each chord, measured from ``a1``
        and ``b1`` respectively.

    Raises
    ------
    GeometryError
        If the segments are parallel (including collinear overlap) or the
        lines meet outside either segment.
    """
    pts = [vec3(p) for p in (a1, a2, b1, b2)]
    for p in pts:
        if abs(p[2] - 1.0) > tol:
            raise GeometryError(f"point {p.tolist()} is not on the z=1 plane (tol {tol:g})")
    a1, a2, b1, b2 = (p[:2] for p in pts)
    d = a2 - a1
    e = b2 - b1
    len_a = math.hypot(*d)
    len_b = math.hypot(*e)
    if len_a == 0.0 or len_b == 0.0:
        raise GeometryError("degenerate chord of zero length")
    den = d[0] * e[1] - d[1] * e[0]
    if abs(den) <= 1e-12 * len_a * len_b:
        raise GeometryError("chords are parallel; no unique intersection")
    w = b1 - a1
    t = (w[0] * e[1] - w[1] * e[0]) / den
    u = (w[0] * d[1] - w[1] * d[0]) / den
    if not (-tol <= t <= 1 + tol and -tol <= u <= 1 + tol):
        raise GeometryError(
            f"no intersection within the segments (params {t:.3g}, {u:.3g}; tol {tol:g})"
        )
    t = min(max(t, 0.0), 1.0)
    u = min(max(u, 0.0), 1.0)
    point = np.array([*(a1 + t * d), 1.0])
    return point, ChordSplit(t * len_a, (1 - t) * len_a), ChordSplit(u * len_b, (1 - u) * len_b)


def barycentric_triangle(target, a, b, c, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """Weights ``(p, q, 1 - p - q)`` with ``p*a + q*b + (1-p-q)*c == target``."""
    m = np.column_stack([vec3(a), vec3(b), vec3(c)])
    t = vec3(target)
    # rows: x, y, z; the z row enforces the weights sum to one for z=1 points
    det = np.linalg.det(m)
    if abs(det) < 1e-12:
        raise GeometryError("triangle vertices are affinely dependent")
    w = np.linalg.solve(m, t)
    if np.any(w < -tol):
        raise GeometryError(f"target outside the triangle (weights {w.tolist()}, tol {tol:g})")
    w = np.clip(w, 0.0, None)
    return w / w.sum()


def xlogx(p: float) -> float:
    return p * math.log(p) if p > 0.0 else 0.0


def shannon_entropy(weights) -> float:
    """Shannon entropy in nats, with 0 log 0 = 0."""
    w = as_weights(weights)
    return max(0.0, -sum(xlogx(float(p)) for p in w))


def binary_entropy(p: float) -> float:
    return -xlogx(p) - xlogx(1.0 - p)
