import math

import numpy as np
import pytest

from ngon_entropy.entropy import (
    Component,
    Decomposition,
    EntropyError,
    EntropyExpr,
    Verdict,
    app1_rhs,
    chord_offset,
    closed_form_S_A_first,
    closed_form_S_A_second,
    construct_omega_A,
    construct_omega_P,
    construct_omega_Q,
    construct_omega_R,
    distinguished_decomposition,
    entropy_disk,
    entropy_of_decomposition,
    entropy_trit,
    geometric_S_A,
    verify_theorem,
)
from ngon_entropy.geometry import binary_entropy
from ngon_entropy.theory import (
    INFINITE,
    PolygonSpec,
    StateVector,
    TheoryError,
    center,
    contains_state,
    edge_midpoint,
    evaluate,
    mix,
    pure_effect,
    pure_state,
)

import frozen as F

LN2, LN3 = math.log(2), math.log(3)
ODD = list(range(5, 22, 2))


def test_entropy_of_two_pure_states():
    s = PolygonSpec(6)
    a, b = pure_state(s, 0), pure_state(s, 3)
    d = distinguished_decomposition(center(s), (Component(0.5, a, "ω_0"), Component(0.5, b, "ω_3")))
    expr = entropy_of_decomposition(d)
    assert expr.unknown is None and expr.value() == pytest.approx(LN2, abs=1e-15)


def test_entropy_of_single_pure_component():
    s = PolygonSpec(5)
    a = pure_state(s, 2)
    assert entropy_of_decomposition(Decomposition(a, [Component(1.0, a, "ω_2")])).value() == 0.0


def test_entropy_with_unknown_symbol():
    q = construct_omega_Q(PolygonSpec(5))
    expr = entropy_of_decomposition(q.decomp_a)
    p = q.ratios["p"] / (q.ratios["p"] + q.ratios["q"])
    assert expr.unknown == "S(ω_A)"
    assert expr.coefficient == pytest.approx(p, abs=1e-15)
    assert expr.constant == pytest.approx(binary_entropy(p), abs=1e-15)
    known = entropy_of_decomposition(q.decomp_a, {"S(ω_A)": 0.1})
    assert known.unknown is None
    assert known.value() == pytest.approx(expr.value(0.1), abs=1e-15)


def test_two_unknowns_rejected():
    s = PolygonSpec(5)
    m1, m2 = edge_midpoint(s, 1), edge_midpoint(s, 3)
    target = mix([m1, m2], [0.5, 0.5])
    d = Decomposition(target, [Component(0.5, m1, "a", "S(a)"), Component(0.5, m2, "b", "S(b)")])
    with pytest.raises(EntropyError):
        entropy_of_decomposition(d)


def test_decomposition_must_reconstruct():
    s = PolygonSpec(5)
    with pytest.raises(EntropyError):
        Decomposition(center(s), [Component(1.0, pure_state(s, 0), "ω_0")])


def test_non_distinguishable_pair_rejected():
    s = PolygonSpec(5)
    a, b = pure_state(s, 0), pure_state(s, 1)
    with pytest.raises(EntropyError):
        distinguished_decomposition(mix([a, b], [0.5, 0.5]), (Component(0.5, a, "a"), Component(0.5, b, "b")))


def test_expr_solve():
    a = EntropyExpr(0.2, 0.5, "S")
    b = EntropyExpr(0.4)
    assert a.solve_equal(b) == pytest.approx(0.4)
    with pytest.raises(EntropyError):
        EntropyExpr(0.1).solve_equal(EntropyExpr(0.2))


def test_entropy_trit():
    s = PolygonSpec(3)
    assert entropy_trit(center(s)) == pytest.approx(LN3, abs=1e-12)
    for k in range(3):
        assert entropy_trit(pure_state(s, k)) == pytest.approx(0.0, abs=1e-12)
        assert entropy_trit(edge_midpoint(s, k)) == pytest.approx(LN2, abs=1e-12)
    with pytest.raises(TheoryError):
        entropy_trit(center(PolygonSpec(4)))


def test_entropy_trit_is_consistent_with_mixing_rule():
    # every decomposition into distinguishable states gives the same value
    s = PolygonSpec(3)
    rng = np.random.default_rng(3)
    for _ in range(50):
        w = rng.dirichlet(np.ones(3))
        target = mix([pure_state(s, k) for k in range(3)], w)
        # decompose as vertex 0 plus a point on the opposite edge
        edge_pt = mix([pure_state(s, 1), pure_state(s, 2)], [w[1] / (1 - w[0]), w[2] / (1 - w[0])])
        d = distinguished_decomposition(
            target, (Component(w[0], pure_state(s, 0), "ω_0"), Component(1 - w[0], edge_pt, "m", "S(m)"))
        )
        value = entropy_of_decomposition(d, {"S(m)": entropy_trit(edge_pt)}).value()
        assert value == pytest.approx(entropy_trit(target), abs=1e-12)


def test_entropy_disk():
    assert entropy_disk(center(INFINITE)) == pytest.approx(LN2, abs=1e-15)
    assert entropy_disk(pure_state(INFINITE, theta=1.0)) == pytest.approx(0.0, abs=1e-12)
    half = StateVector([0.5 * math.cos(0.7), 0.5 * math.sin(0.7), 1.0], INFINITE)
    assert entropy_disk(half) == pytest.approx(F.H_QUARTER, abs=1e-12)
    with pytest.raises(TheoryError):
        entropy_disk(center(PolygonSpec(5)))


def test_entropy_disk_defined_everywhere():
    rng = np.random.default_rng(0)
    for _ in range(500):
        rho, th = math.sqrt(rng.random()), rng.uniform(0, 2 * math.pi)
        v = entropy_disk(StateVector([rho * math.cos(th), rho * math.sin(th), 1.0], INFINITE))
        assert 0.0 <= v <= LN2 + 1e-15 and math.isfinite(v)


def test_omega_P_hexagon():
    p = construct_omega_P(PolygonSpec(6))
    assert p.state.coords == pytest.approx([F.HALF_R6, 0, 1], abs=1e-14)
    assert p.split_a.ratio == pytest.approx(0.25, abs=1e-14)
    assert p.split_b.ratio == pytest.approx(0.5, abs=1e-14)
    x, y = p.ratios["x"], p.ratios["y"]
    assert p.split_b.ratio == pytest.approx(app1_rhs(6, x, y), abs=1e-14)
    assert app1_rhs(6, x, y) == pytest.approx(x / (x + y / 3), abs=1e-15)


def test_omega_P_octagon():
    p = construct_omega_P(PolygonSpec(8))
    assert (p.split_a.ratio, p.split_b.ratio) == pytest.approx(F.OMEGA_P8_RATIOS, abs=1e-14)
    k = (math.cos(math.pi / 4) / math.cos(math.pi / 8)) ** 2
    x, y = p.ratios["x"], p.ratios["y"]
    assert p.split_b.ratio == pytest.approx(x / (x + k * y), abs=1e-10)


def test_omega_P_errors():
    with pytest.raises(TheoryError):
        construct_omega_P(PolygonSpec(4))
    with pytest.raises(TheoryError):
        construct_omega_P(PolygonSpec(7))


def test_omega_A():
    s = PolygonSpec(5)
    a = construct_omega_A(s)
    assert a.coords == pytest.approx([F.PENTAGON_MID_23_X, 0, 1], abs=1e-14)
    assert evaluate(pure_effect(s, 0), a) == pytest.approx(0.0, abs=1e-14)
    a7 = construct_omega_A(PolygonSpec(7), 3)
    assert a7.isclose(edge_midpoint(PolygonSpec(7), 0))
    assert contains_state(PolygonSpec(7), a7.coords)
    with pytest.raises(TheoryError):
        construct_omega_A(PolygonSpec(6))


def test_omega_Q_pentagon():
    q = construct_omega_Q(PolygonSpec(5))
    assert q.state.coords == pytest.approx([F.OMEGA_Q5_X, 0, 1], abs=1e-14)
    assert q.decomp_a.weights[0] == pytest.approx(F.OMEGA_Q5_WEIGHT_A, abs=1e-14)
    r = q.ratios
    c = math.cos(math.pi / 5)
    assert r["q"] / r["p"] == pytest.approx((2 * c - 1) / 2, abs=1e-12)
    assert r["u"] / r["v"] == pytest.approx(2 * c, abs=1e-12)
    assert r["u"] / (r["u"] + r["v"]) == pytest.approx(F.OMEGA_Q5_CHORD_RATIO, abs=1e-12)


def test_omega_R():
    r5 = construct_omega_R(PolygonSpec(5))
    assert r5.state.coords == pytest.approx([F.OMEGA_R5_X, 0, 1], abs=1e-14)
    assert r5.state.isclose(mix([pure_state(PolygonSpec(5), 1), pure_state(PolygonSpec(5), 4)], [0.5, 0.5]))
    assert r5.decomp_a.weights[0] == pytest.approx(F.OMEGA_R5_WEIGHT_A, abs=1e-14)
    assert r5.decomp_b.weights == pytest.approx([0.5, 0.5], abs=1e-12)
    assert r5.ratios["z"] / r5.ratios["w"] == pytest.approx(1 + 2 * math.sin(math.pi / 10), abs=1e-12)
    r7 = construct_omega_R(PolygonSpec(7))
    assert r7.ratios["z"] / r7.ratios["w"] == pytest.approx(F.OMEGA_R7_Z_OVER_W, abs=1e-10)


def test_chord_offset():
    assert [chord_offset(n) for n in (5, 7, 9, 11, 13)] == [1, 2, 2, 3, 3]


@pytest.mark.parametrize("n", ODD)
@pytest.mark.parametrize("builder", [construct_omega_Q, construct_omega_R])
def test_constructed_decompositions_are_valid(n, builder):
    spec = PolygonSpec(n)
    for i in (0, 1, n - 1):
        w = builder(spec, i)
        for d in (w.decomp_a, w.decomp_b):
            d.witness.check(d.states)
            rebuilt = sum(c.weight * c.state.coords for c in d.components)
            assert np.max(np.abs(rebuilt - w.state.coords)) <= 1e-9


def test_closed_forms_examples():
    assert closed_form_S_A_first(3) == pytest.approx(LN2, abs=1e-12)
    assert closed_form_S_A_second(3) == pytest.approx(LN2, abs=1e-12)
    assert closed_form_S_A_first(5) == pytest.approx(F.EQ5_N5, abs=1e-13)
    assert closed_form_S_A_second(5) == pytest.approx(F.EQ6_N5, abs=1e-13)
    for n in (7, 9):
        assert closed_form_S_A_first(n) == pytest.approx(F.EQ5[n], abs=1e-13)
        assert closed_form_S_A_second(n) == pytest.approx(F.EQ6[n], abs=1e-13)
    assert closed_form_S_A_second(101) < 1e-3
    assert closed_form_S_A_first(10001) < 1e-6


@pytest.mark.parametrize("f", [closed_form_S_A_first, closed_form_S_A_second])
def test_closed_forms_reject_even(f):
    with pytest.raises(TheoryError):
        f(6)


@pytest.mark.parametrize("n", ODD)
def test_geometry_matches_closed_forms(n):
    for i in range(n):
        first, second = geometric_S_A(PolygonSpec(n), i)
        assert first == pytest.approx(closed_form_S_A_first(n), abs=1e-9)
        assert second == pytest.approx(closed_form_S_A_second(n), abs=1e-9)


def test_closed_form_alternate_forms_all_odd():
    # each closed form raises if its two algebraic forms differ by more than 1e-12
    for n in range(3, 100, 2):
        closed_form_S_A_first(n)
        closed_form_S_A_second(n)


def test_verify_endpoints():
    r3 = verify_theorem(PolygonSpec(3))
    assert r3.verdict is Verdict.CONSISTENT and r3.gap <= 1e-12
    rinf = verify_theorem(INFINITE)
    assert rinf.verdict is Verdict.CONSISTENT and rinf.gap == 0.0
    assert verify_theorem(PolygonSpec(4)).verdict is Verdict.EXTERNAL


def test_verify_n5_n6():
    r5 = verify_theorem(PolygonSpec(5))
    assert r5.verdict is Verdict.INCONSISTENT
    assert r5.gap == pytest.approx(F.GAP_N5, abs=1e-12)
    r6 = verify_theorem(PolygonSpec(6))
    assert r6.verdict is Verdict.INCONSISTENT
    assert r6.gap == pytest.approx(F.GAP_N6, abs=1e-12)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_gap_independent_of_base_index(n):
    gaps = [verify_theorem(PolygonSpec(n), i).gap for i in range(n)]
    assert max(gaps) - min(gaps) <= 1e-10


def test_gap_positive_and_shrinking():
    gaps = {n: verify_theorem(PolygonSpec(n)).gap for n in range(5, 102, 2)}
    assert all(g > 0 for g in gaps.values())
    assert gaps[101] < gaps[5]
    assert gaps[101] == pytest.approx(F.GAP_N101, rel=1e-6)


def test_report_serialisation():
    d = verify_theorem(PolygonSpec(5)).to_dict()
    assert d["n"] == 5 and d["verdict"] == "inconsistent"
    assert len(d["values"]) == 4
