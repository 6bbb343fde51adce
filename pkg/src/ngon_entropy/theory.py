"""Regular polygon theories: pure states, extreme effects and membership tests.

A theory is fixed by :class:`PolygonSpec`. Finite ``n`` gives the regular
n-gon of circumradius ``r_n = (1/cos(pi/n))**0.5`` at height z = 1; the
infinite case is the unit disk. Effects act on states by the ordinary dot
product, and ``u = (0, 0, 1)`` is the unit effect.
"""
from __future__ import annotations

import json
import math
import numbers
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .geometry import IDENTITY_TOL, MEMBERSHIP_TOL, convex_combine, inner, vec3

TWO_PI = 2.0 * math.pi


class TheoryError(ValueError):
    pass


@dataclass(frozen=True)
class PolygonSpec:
    """Which n-gon theory; ``n`` is an int >= 3 or ``math.inf`` for the disk."""

    n: Union[int, float]

    def __post_init__(self):
        n = self.n
        if isinstance(n, float) and math.isinf(n) and n > 0:
            return
        if isinstance(n, bool) or not isinstance(n, numbers.Integral):
            raise TheoryError(f"n must be an integer >= 3 or inf, got {n!r}")
        if n < 3:
            raise TheoryError(f"n must be >= 3, got {n}")
        object.__setattr__(self, "n", int(n))

    @classmethod
    def parse(cls, text) -> "PolygonSpec":
        if isinstance(text, str):
            t = text.strip().lower()
            if t in ("inf", "infinity", "oo", "∞"):
                return cls(math.inf)
            try:
                n = int(t)
            except ValueError:
                raise TheoryError(f"cannot parse n from {text!r}") from None
            return cls(n)
        return cls(text)

    @property
    def infinite(self) -> bool:
        return not isinstance(self.n, int)

    @property
    def even(self) -> bool:
        return not self.infinite and self.n % 2 == 0

    @property
    def odd(self) -> bool:
        return not self.infinite and self.n % 2 == 1

    def label(self):
        return "inf" if self.infinite else self.n

    def __str__(self):
        return str(self.label())


INFINITE = PolygonSpec(math.inf)


def _frozen(v) -> np.ndarray:
    a = vec3(v).copy()
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class _TheoryVector:
    coords: np.ndarray
    theory: PolygonSpec

    def to_dict(self) -> dict:
        return {"n": self.theory.label(), "coords": [float(c) for c in self.coords]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict):
        try:
            return cls(d["coords"], PolygonSpec.parse(d["n"]))
        except KeyError as exc:
            raise TheoryError(f"missing field {exc} in {d!r}") from None

    @classmethod
    def from_json(cls, text: str):
        return cls.from_dict(json.loads(text))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)

    def isclose(self, other, tol: float = IDENTITY_TOL) -> bool:
        return bool(np.max(np.abs(np.asarray(self) - np.asarray(other))) <= tol)


@dataclass(frozen=True, eq=False)
class StateVector(_TheoryVector):
    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen(self.coords))
        if not contains_state(self.theory, self.coords):
            raise TheoryError(
                f"{self.coords.tolist()} is not a state of the {self.theory}-gon theory "
                f"(tol {MEMBERSHIP_TOL:g})"
            )


@dataclass(frozen=True, eq=False)
class EffectVector(_TheoryVector):
    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen(self.coords))
        if not contains_effect(self.theory, self.coords):
            raise TheoryError(
                f"{self.coords.tolist()} is not an effect of the {self.theory}-gon theory "
                f"(tol {MEMBERSHIP_TOL:g})"
            )

    def complement(self) -> "EffectVector":
        return EffectVector(np.array([0.0, 0.0, 1.0]) - self.coords, self.theory)


@dataclass(frozen=True)
class Measurement:
    effects: tuple = field(default_factory=tuple)

    def __post_init__(self):
        effects = tuple(self.effects)
        object.__setattr__(self, "effects", effects)
        if not effects:
            raise TheoryError("a measurement needs at least one effect")
        theories = {e.theory for e in effects}
        if len(theories) != 1:
            raise TheoryError("effects of a measurement must belong to one theory")
        total = np.sum([e.coords for e in effects], axis=0)
        if np.max(np.abs(total - np.array([0.0, 0.0, 1.0]))) > IDENTITY_TOL:
            raise TheoryError(f"effects sum to {total.tolist()}, not the unit effect")

    @property
    def theory(self) -> PolygonSpec:
        return self.effects[0].theory

    def __len__(self):
        return len(self.effects)

    def __iter__(self):
        return iter(self.effects)

    def __getitem__(self, k):
        return self.effects[k]

    def probabilities(self, state: StateVector) -> np.ndarray:
        return np.array([evaluate(e, state) for e in self.effects])


def radius(spec: PolygonSpec) -> float:
    if spec.infinite:
        return 1.0
    return math.sqrt(1.0 / math.cos(math.pi / spec.n))


def _check_which(spec, i, theta):
    if spec.infinite:
        if i is not None or theta is None:
            raise TheoryError("the disk theory takes an angle theta, not an index")
        return math.fmod(theta, TWO_PI) % TWO_PI
    if theta is not None or i is None:
        raise TheoryError(f"the {spec.n}-gon theory takes an integer index, not an angle")
    if isinstance(i, bool) or not isinstance(i, numbers.Integral):
        raise TheoryError(f"index must be an integer, got {i!r}")
    return int(i) % spec.n


def _pure_coords(spec, i=None, theta=None) -> np.ndarray:
    which = _check_which(spec, i, theta)
    r = radius(spec)
    angle = which if spec.infinite else TWO_PI * which / spec.n
    return np.array([r * math.cos(angle), r * math.sin(angle), 1.0])


def pure_state(spec: PolygonSpec, i: int | None = None, *, theta: float | None = None) -> StateVector:
    """Vertex ``i`` (reduced mod n) of the n-gon, or the boundary point at angle ``theta`` of the disk."""
    return StateVector(_pure_coords(spec, i, theta), spec)


def pure_states(spec: PolygonSpec) -> list[StateVector]:
    if spec.infinite:
        raise TheoryError("the disk has a continuum of pure states; use pure_state(spec, theta=...)")
    return [pure_state(spec, i) for i in range(spec.n)]


@lru_cache(maxsize=256)
def _vertex_array(spec: PolygonSpec) -> np.ndarray:
    a = np.array([_pure_coords(spec, i) for i in range(spec.n)])
    a.setflags(write=False)
    return a


def pure_effect(
    spec: PolygonSpec,
    i: int | None = None,
    *,
    theta: float | None = None,
    complement: bool = False,
) -> EffectVector:
    """The extreme effect ``e_i`` (or ``u - e_i`` with ``complement=True``).

    For even n, ``e_i`` is 1 on the edge ``[i-1, i]``; for odd n it is 1
    only at vertex ``i``; for the disk ``e_theta`` is 1 at angle ``theta``.
    """
    which = _check_which(spec, i, theta)
    if spec.infinite:
        v = 0.5 * np.array([math.cos(which), math.sin(which), 1.0])
    else:
        n, r = spec.n, radius(spec)
        if spec.even:
            angle = (2 * which - 1) * math.pi / n
            v = 0.5 * np.array([r * math.cos(angle), r * math.sin(angle), 1.0])
        else:
            angle = TWO_PI * which / n
            v = np.array([r * math.cos(angle), r * math.sin(angle), 1.0]) / (1.0 + r * r)
    if complement:
        v = np.array([0.0, 0.0, 1.0]) - v
    return EffectVector(v, spec)


def zero_effect(spec: PolygonSpec) -> EffectVector:
    return EffectVector(np.zeros(3), spec)


def unit_effect(spec: PolygonSpec) -> EffectVector:
    return EffectVector(np.array([0.0, 0.0, 1.0]), spec)


def pure_effects(spec: PolygonSpec) -> list[EffectVector]:
    """Extreme points of the effect space: ``0``, ``u``, the ``e_i`` and, for odd n, the ``u - e_i``.

    The disk has a continuum of extreme effects, so it is not listed; use
    :func:`pure_effect` with ``theta`` and :func:`contains_effect`.
    """
    if spec.infinite:
        raise TheoryError("the disk has a continuum of extreme effects; use pure_effect(spec, theta=...)")
    effects = [zero_effect(spec), unit_effect(spec)]
    effects += [pure_effect(spec, i) for i in range(spec.n)]
    if spec.odd:
        effects += [pure_effect(spec, i, complement=True) for i in range(spec.n)]
    return effects


def evaluate(e: EffectVector, omega: StateVector) -> float:
    """Outcome probability ``e(omega)``."""
    if e.theory != omega.theory:
        raise TheoryError(f"effect of the {e.theory}-gon applied to a state of the {omega.theory}-gon")
    return inner(e.coords, omega.coords)


def contains_state(spec: PolygonSpec, v, tol: float = MEMBERSHIP_TOL) -> bool:
    v = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)) or abs(v[2] - 1.0) > tol:
        return False
    x, y = v[0], v[1]
    if spec.infinite:
        return math.hypot(x, y) <= 1.0 + tol
    n, r = spec.n, radius(spec)
    apothem = r * math.cos(math.pi / n)
    k = np.arange(n)
    normals = (2 * k + 1) * math.pi / n
    return bool(np.all(x * np.cos(normals) + y * np.sin(normals) <= apothem + tol))


def contains_effect(spec: PolygonSpec, v, tol: float = MEMBERSHIP_TOL) -> bool:
    """Membership in the unrestricted effect space: ``0 <= v(omega) <= 1`` on every state."""
    v = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)):
        return False
    if spec.infinite:
        a, b, c = v
        rho = math.hypot(a, b)
        return c - rho >= -tol and c + rho <= 1.0 + tol
    values = _vertex_array(spec) @ v
    return bool(np.all(values >= -tol) and np.all(values <= 1.0 + tol))


def center(spec: PolygonSpec) -> StateVector:
    return StateVector(np.array([0.0, 0.0, 1.0]), spec)


def edge_midpoint(spec: PolygonSpec, k: int) -> StateVector:
    """Midpoint of the edge between vertices ``k-1`` and ``k``."""
    a = _pure_coords(spec, k - 1)
    b = _pure_coords(spec, k)
    return StateVector(0.5 * (a + b), spec)


def mix(states: Iterable[StateVector], weights) -> StateVector:
    states = list(states)
    spec = states[0].theory
    if any(s.theory != spec for s in states):
        raise TheoryError("cannot mix states of different theories")
    return StateVector(convex_combine([s.coords for s in states], weights), spec)
