"""Perfect distinguishability of states in the polygon theories.

Two independent routes answer the same question. :func:`closed_form_pair`
uses the edge characterisation of distinguishable pairs, and
:func:`lp_distinguishable` searches the unrestricted effect polytope with
a feasibility LP. The two are cross-checked in the test suite.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lp as _lp
from .geometry import MEMBERSHIP_TOL
from .theory import (
    EffectVector,
    Measurement,
    PolygonSpec,
    StateVector,
    TheoryError,
    _pure_coords,
    _vertex_array,
    evaluate,
    pure_effect,
    pure_state,
    unit_effect,
)

WITNESS_TOL = 1e-9


@dataclass(frozen=True)
class EdgeSegment:
    """The edge between pure states ``k-1`` and ``k``."""

    theory: PolygonSpec
    k: int

    def __post_init__(self):
        if self.theory.infinite:
            raise TheoryError("the disk has no edges")
        object.__setattr__(self, "k", self.k % self.theory.n)

    @property
    def endpoints(self):
        return _pure_coords(self.theory, self.k - 1), _pure_coords(self.theory, self.k)

    def contains(self, state, tol: float = MEMBERSHIP_TOL) -> bool:
        a, b = (p[:2] for p in self.endpoints)
        x = np.asarray(state, dtype=float)[:2]
        d = b - a
        t = float(np.clip(np.dot(x - a, d) / np.dot(d, d), 0.0, 1.0))
        return float(np.linalg.norm(a + t * d - x)) <= tol


@dataclass(frozen=True)
class Witness:
    """A measurement distinguishing a list of states.

    ``mapping[j]`` is the index of the effect that fires with certainty on
    state ``j``.
    """

    measurement: Measurement
    mapping: tuple

    def effect_for(self, j: int) -> EffectVector:
        return self.measurement[self.mapping[j]]

    def check(self, states: Sequence[StateVector], tol: float = WITNESS_TOL) -> float:
        """Return the largest deviation from ``e_mapping[j](state_k) = delta_jk``; raise if above ``tol``."""
        worst = 0.0
        for j in range(len(states)):
            e = self.effect_for(j)
            for k, s in enumerate(states):
                worst = max(worst, abs(evaluate(e, s) - (1.0 if j == k else 0.0)))
        if worst > tol:
            raise AssertionError(f"witness deviates from delta by {worst:.3e} (tol {tol:g})")
        return worst


def _vertex_index(spec: PolygonSpec, state, tol=MEMBERSHIP_TOL) -> int | None:
    d = np.linalg.norm(_vertex_array(spec)[:, :2] - np.asarray(state)[:2], axis=1)
    i = int(np.argmin(d))
    return i if d[i] <= tol else None


def _pair_witness(e: EffectVector, first_fires: bool) -> Witness:
    m = Measurement((e, e.complement()))
    return Witness(m, (0, 1) if first_fires else (1, 0))


def _check_same(spec, states):
    for s in states:
        if s.theory != spec:
            raise TheoryError(f"state of the {s.theory}-gon given for the {spec}-gon theory")


def closed_form_pair(spec: PolygonSpec, a: StateVector, b: StateVector) -> Witness | None:
    """Distinguish two states by the edge characterisation, or return ``None``.

    Even n: ``a`` and ``b`` lie on opposite edges ``[i-1, i]`` and
    ``[i+n/2-1, i+n/2]``. Odd n: one is the vertex ``i`` and the other lies
    on the opposite edge ``[i+(n-1)/2, i+(n+1)/2]``. Disk: antipodal pure
    states. The witness is ``{e_i, u - e_i}`` in each case.
    """
    _check_same(spec, (a, b))
    if spec.infinite:
        pa, pb = np.asarray(a)[:2], np.asarray(b)[:2]
        if abs(np.linalg.norm(pa) - 1.0) > MEMBERSHIP_TOL or np.linalg.norm(pa + pb) > MEMBERSHIP_TOL:
            return None
        theta = math.atan2(pa[1], pa[0])
        return _pair_witness(pure_effect(spec, theta=theta), True)

    n = spec.n
    if spec.even:
        half = n // 2
        for i in range(1, n + 1):
            near, far = EdgeSegment(spec, i), EdgeSegment(spec, i + half)
            if near.contains(a) and far.contains(b):
                return _pair_witness(pure_effect(spec, i), True)
            if near.contains(b) and far.contains(a):
                return _pair_witness(pure_effect(spec, i), False)
        return None

    for first, (s, other) in ((True, (a, b)), (False, (b, a))):
        i = _vertex_index(spec, s)
        if i is not None and EdgeSegment(spec, i + (n + 1) // 2).contains(other):
            return _pair_witness(pure_effect(spec, i), first)
    return None


def witness_lp(spec: PolygonSpec, states: Sequence[StateVector]) -> _lp.LinearProgram:
    """Feasibility LP for a distinguishing measurement ``e_1..e_m`` (3m unknowns)."""
    m = len(states)
    verts = _vertex_array(spec)
    nv = 3 * m
    A_ineq = np.zeros((m * len(verts), nv))
    for k in range(m):
        A_ineq[k * len(verts):(k + 1) * len(verts), 3 * k:3 * k + 3] = verts
    lower = np.zeros(len(A_ineq))
    upper = np.ones(len(A_ineq))

    A_eq = np.zeros((3 + m * m, nv))
    b_eq = np.zeros(3 + m * m)
    for k in range(m):
        A_eq[0:3, 3 * k:3 * k + 3] = np.eye(3)
    b_eq[2] = 1.0
    row = 3
    for k in range(m):
        for j, s in enumerate(states):
            A_eq[row, 3 * k:3 * k + 3] = np.asarray(s)
            b_eq[row] = 1.0 if k == j else 0.0
            row += 1
    return _lp.LinearProgram(nv, A_eq, b_eq, A_ineq, lower, upper)


def lp_distinguishable(spec: PolygonSpec, states: Sequence[StateVector]) -> Witness | None:
    """Decide perfect distinguishability of ``states`` with the phase-1 simplex.

    Only finite n is supported: the disk has infinitely many effect
    constraints. Returns ``None`` on a certified infeasible LP.
    """
    states = list(states)
    if spec.infinite:
        raise TheoryError("LP route needs finite n; use closed_form_pair for the disk")
    _check_same(spec, states)
    m = len(states)
    if m < 1:
        raise ValueError("need at least one state")
    if m > spec.n:
        raise ValueError(f"at most n={spec.n} states can be distinguished, got {m}")
    if m == 1:
        return Witness(Measurement((unit_effect(spec),)), (0,))
    result = _lp.solve_feasibility(witness_lp(spec, states))
    if not result.feasible:
        return None
    coords = result.point.reshape(m, 3)
    # the equality rows pin sum(e_k) = u to round-off; put any residue on the last effect
    coords[-1] = np.array([0.0, 0.0, 1.0]) - coords[:-1].sum(axis=0)
    effects = tuple(EffectVector(c, spec) for c in coords)
    return Witness(Measurement(effects), tuple(range(m)))


def is_distinguishable(spec: PolygonSpec, states: Sequence[StateVector]) -> bool:
    states = list(states)
    if len(states) == 2:
        return closed_form_pair(spec, *states) is not None
    if len(states) == 1:
        return True
    if spec.infinite:
        # a state that one disk effect certifies forces every other state onto its antipode
        return False
    return lp_distinguishable(spec, states) is not None


def max_distinguishable_size(spec: PolygonSpec, bound: int = 32) -> int:
    """Largest number of pure states admitting a distinguishing measurement.

    Sweeps subsets of pure states by LP, growing the size until no subset
    works. Subsets are taken up to rotation (each contains vertex 0), and
    the sweep stops at the first failing size since distinguishability is
    inherited by subsets.
    """
    if spec.infinite:
        return 2
    n = spec.n
    if n > bound:
        raise ValueError(f"n={n} exceeds the sweep bound {bound}")
    verts = [pure_state(spec, i) for i in range(n)]
    best = 1
    for m in range(2, n + 1):
        found = False
        for rest in itertools.combinations(range(1, n), m - 1):
            if lp_distinguishable(spec, [verts[0]] + [verts[i] for i in rest]) is not None:
                found = True
                break
        if not found:
            break
        best = m
    return best
