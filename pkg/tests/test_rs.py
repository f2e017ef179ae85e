import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperk.errors import NoConvergence, NotDifferentiable
from hyperk.funcspace import SeparableFn
from hyperk.hypnum import Hyp, k_module, strict_less
from hyperk.interval import HypInterval
from hyperk.partition import RealPartition, StrongPartition, gen_strong
from hyperk.rs import (
    integration_by_parts_sides,
    real_rs_integral,
    riemann_identity_integral,
    rs_integral,
    rs_integral_components,
    rs_sum,
    verify_integration_by_parts,
)

UNIT = HypInterval(Hyp(0, 0), Hyp(1, 1))
HALVES = StrongPartition((Hyp(0, 0), Hyp(0.5, 0.5), Hyp(1, 1)))
EPS = Hyp(1e-9, 1e-9)
ID = SeparableFn.identity()
ONE = SeparableFn.constant(1)


def close(a: Hyp, b: Hyp, tol: float) -> bool:
    return strict_less(k_module(a - b), Hyp(tol, tol))


# --- sums -------------------------------------------------------------------------------


@pytest.mark.parametrize("strategy", ["e1_first", "e2_first", "diagonal"])
def test_constant_against_identity_telescopes(strategy):
    part = gen_strong([0, 0.2, 0.7, 1], [0, 0.5, 1], strategy)
    for sample in ("left", "right", "midpoint"):
        assert rs_sum(ONE, ID, part, sample) == Hyp(1, 1)


def test_mode_discrepancy():
    G = SeparableFn("-x", "x")
    assert rs_sum(ONE, G, HALVES, mode="signed") == Hyp(-1, 1)
    assert rs_sum(ONE, G, HALVES, mode="absolute") == Hyp(1, 1)


def test_left_sample_two_terms():
    assert rs_sum(ID, ID, HALVES, "left") == Hyp(0.25, 0.25)
    assert rs_sum(ID, ID, HALVES, "right") == Hyp(0.75, 0.75)
    assert rs_sum(ID, ID, HALVES, "midpoint") == Hyp(0.5, 0.5)


def test_random_sample_is_seeded_and_bracketed():
    part = gen_strong(RealPartition.uniform(0, 1, 8).points, RealPartition.uniform(0, 1, 8).points, "diagonal")
    a = rs_sum(ID, ID, part, "random", seed=3)
    assert a == rs_sum(ID, ID, part, "random", seed=3)
    lo, hi = rs_sum(ID, ID, part, "left"), rs_sum(ID, ID, part, "right")
    assert lo.a1 <= a.a1 <= hi.a1 and lo.a2 <= a.a2 <= hi.a2


def test_unknown_rules_rejected():
    with pytest.raises(ValueError):
        rs_sum(ID, ID, HALVES, "centre")
    with pytest.raises(ValueError):
        rs_sum(ID, ID, HALVES, mode="both")


# --- driver -------------------------------------------------------------------------------


def test_integral_examples():
    r = rs_integral(ONE, ID, UNIT, EPS)
    assert r.converged and close(r.value, Hyp(1, 1), 1e-12)
    r = rs_integral(ID, ID, UNIT, EPS)
    assert close(r.value, Hyp(0.5, 0.5), 1e-8)
    r = rs_integral(ID, SeparableFn("x^2", "x^2"), UNIT, EPS)
    assert close(r.value, Hyp(2 / 3, 2 / 3), 1e-8)


def test_component_oracle_examples():
    assert close(rs_integral_components(ONE, ID, UNIT), Hyp(1, 1), 1e-12)
    assert close(rs_integral_components(ID, ID, UNIT), Hyp(0.5, 0.5), 1e-8)
    assert close(rs_integral_components(ID, SeparableFn("x^2", "x^2"), UNIT), Hyp(2 / 3, 2 / 3), 1e-8)
    G = SeparableFn("exp(x)", "x^3")
    I = HypInterval(Hyp(-1, 0), Hyp(2, 1.5))
    assert close(rs_integral_components(ONE, G, I), Hyp(math.e ** 2 - math.e ** -1, 1.5 ** 3), 1e-12)
    flat = rs_integral_components(ID, G, HypInterval(Hyp(2, 0), Hyp(2, 1)))
    assert flat.a1 == 0


@pytest.mark.parametrize("f, g, a, b, exact", [
    (np.sin, np.exp, 0.0, 2.0, None),
    (np.cos, lambda x: x ** 3, -1.0, 1.5, None),
    (lambda x: x ** 2, lambda x: np.sqrt(x + 1), 0.0, 3.0, None),
])
def test_real_oracle_against_plain_quadrature(f, g, a, b, exact):
    # int f dg = int f g' dx for smooth g; compare with a fine composite Simpson rule
    xs = np.linspace(a, b, 20001)
    h = 1e-6
    integrand = f(xs) * (g(xs + h) - g(xs - h)) / (2 * h)
    w = np.ones_like(xs)
    w[1:-1:2], w[2:-1:2] = 4, 2
    simpson = (xs[1] - xs[0]) / 3 * np.sum(w * integrand)
    assert real_rs_integral(f, g, a, b) == pytest.approx(simpson, abs=1e-8)


def test_trace_diameters_halve():
    I = HypInterval(Hyp(0, -1), Hyp(3, 4))
    r = rs_integral(SeparableFn("sin(x)", "x^2"), ID, I, Hyp(1e-6, 1e-6))
    diams = [d for d, _ in r.trace]
    assert diams[0] == I.length
    for d0, d1 in zip(diams, diams[1:]):
        assert d1 == Hyp(d0.a1 / 2, d0.a2 / 2)
    assert r.refinements == len(r.trace) - 1
    assert r.error_estimate.a1 >= 0 and r.error_estimate.a2 >= 0


@pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
def test_driver_levels_are_diagonal_lifts(level):
    I = HypInterval(Hyp(0, 1), Hyp(2, 4))
    F, G = SeparableFn("cos(x)", "x"), SeparableFn("x^2", "exp(x)")
    r = rs_integral(F, G, I, Hyp(1e-30, 1e-30), max_halvings=4)
    n = 2 ** level
    part = gen_strong(RealPartition.uniform(0, 2, n), RealPartition.uniform(1, 4, n), "diagonal")
    assert r.trace[level][1] == rs_sum(F, G, part)


def test_divergent_pair():
    def step(x):
        return np.where(np.asarray(x) < 1 / 3, 0.0, 1.0)

    F = SeparableFn(step, "x", jumps1=(1 / 3,))
    r = rs_integral(F, F, UNIT, EPS, max_halvings=12)
    assert not r.converged and r.refinements == 12
    with pytest.raises(NoConvergence) as info:
        rs_integral(F, F, UNIT, EPS, max_halvings=12, strict=True)
    assert info.value.result is not None


def test_eps_must_be_positive():
    with pytest.raises(ValueError):
        rs_integral(ID, ID, UNIT, Hyp(1e-8, 0))


# --- identity integrals ------------------------------------------------------------------


def test_identity_integral_examples():
    I = HypInterval(Hyp(-1, 2), Hyp(3, 2.5))
    r = riemann_identity_integral(SeparableFn.constant(2.5), I, EPS)
    assert close(r.value, Hyp(10, 1.25), 1e-12)
    r = riemann_identity_integral(SeparableFn("x^2", "x"), UNIT, EPS)
    assert close(r.value, Hyp(1 / 3, 1 / 2), 1e-8)
    r = riemann_identity_integral(ID, HypInterval(Hyp(2, 0), Hyp(2, 1)), EPS)
    assert r.value.a1 == 0 and close(r.value, Hyp(0, 0.5), 1e-12)


# --- integration by parts ----------------------------------------------------------------


def test_parts_examples():
    sq = SeparableFn("x^2", "x^2")
    lhs, rhs = integration_by_parts_sides(ONE, sq, UNIT, EPS)
    assert close(lhs.value, Hyp(1, 1), 1e-6) and close(rhs.value, Hyp(1, 1), 1e-6)
    assert close(verify_integration_by_parts(ONE, sq, UNIT, EPS), Hyp(0, 0), 1e-6)
    lhs, rhs = integration_by_parts_sides(ID, sq, UNIT, EPS)
    assert close(lhs.value, Hyp(2 / 3, 2 / 3), 1e-6) and close(rhs.value, Hyp(2 / 3, 2 / 3), 1e-6)
    F = SeparableFn("sin(x)", "x^3")
    assert close(verify_integration_by_parts(F, ID, UNIT, EPS), Hyp(0, 0), 1e-12)


def test_parts_needs_derivative():
    with pytest.raises(NotDifferentiable):
        verify_integration_by_parts(ONE, SeparableFn("abs(x)", "x"), UNIT, EPS)


# --- properties -----------------------------------------------------------------------------

POLYS = st.lists(st.integers(-3, 3), min_size=1, max_size=4)
ENDS = st.tuples(st.integers(-8, 8), st.integers(1, 8)).map(lambda t: (t[0] / 4, (t[0] + t[1]) / 4))


def poly(c):
    return " + ".join(f"({a})*x^{i}" for i, a in enumerate(c))


PROP = settings(max_examples=10)


@PROP
@given(POLYS, POLYS, ENDS, ENDS)
def test_matches_component_oracle(c1, c2, e1, e2):
    F = SeparableFn(poly(c1), f"sin({poly(c2)})")
    G = SeparableFn("exp(x)", "x^3 + x")
    I = HypInterval(Hyp(e1[0], e2[0]), Hyp(e1[1], e2[1]))
    eps = Hyp(1e-6, 1e-6)
    r = rs_integral(F, G, I, eps)
    assert r.converged
    assert strict_less(k_module(r.value - rs_integral_components(F, G, I)), Hyp(1e-5, 1e-5))


@PROP
@given(POLYS, POLYS, st.integers(-3, 3))
def test_linearity_in_integrand(c1, c2, c):
    F, H = SeparableFn(poly(c1), "cos(x)"), SeparableFn("x", poly(c2))
    G = SeparableFn("x^2", "exp(x)")
    I = HypInterval(Hyp(0, -1), Hyp(1.5, 1))
    combo = SeparableFn(f"({c})*({poly(c1)}) + x", f"({c})*cos(x) + ({poly(c2)})")
    eps = Hyp(1e-6, 1e-6)
    lhs = rs_integral(combo, G, I, eps).value
    rhs = Hyp(c, c) * rs_integral(F, G, I, eps).value + rs_integral(H, G, I, eps).value
    tol = 10 * 1e-6 * (abs(c) + 2)
    assert close(lhs, rhs, tol)


@pytest.mark.parametrize("F, G", [
    (SeparableFn("cos(x)", "x^2"), SeparableFn("x^3", "exp(x)")),
    (SeparableFn("exp(-x)", "sin(x)"), SeparableFn("x", "x^2 + x")),
])
def test_sample_rule_independence(F, G):
    I = HypInterval(Hyp(0, 0), Hyp(1, 2))
    # left and right sums converge only at first order, hence the looser eps
    eps = Hyp(1e-5, 1e-5)
    mid = rs_integral(F, G, I, eps).value
    for sample in ("left", "right"):
        r = rs_integral(F, G, I, eps, sample=sample)
        assert r.converged
        assert close(r.value, mid, 10 * 1e-5)


@pytest.mark.parametrize("G", [
    SeparableFn("x^3", "exp(x)"),
    SeparableFn("x + sin(x)", "x^2"),
    SeparableFn("sqrt(x + 2)", "x"),
])
def test_modes_agree_for_monotone_integrator(G):
    F = SeparableFn("cos(3*x)", "x^2 - 1")
    I = HypInterval(Hyp(-1, 0), Hyp(2, 3))
    eps = Hyp(1e-7, 1e-7)
    signed = rs_integral(F, G, I, eps)
    absolute = rs_integral(F, G, I, eps, mode="absolute")
    assert signed.value == absolute.value


def test_modes_differ_for_decreasing_integrator():
    F = SeparableFn("x", "x")
    G = SeparableFn("-x", "x")
    signed = rs_integral(F, G, UNIT, EPS).value
    absolute = rs_integral(F, G, UNIT, EPS, mode="absolute").value
    assert close(signed, Hyp(-0.5, 0.5), 1e-8) and close(absolute, Hyp(0.5, 0.5), 1e-8)
