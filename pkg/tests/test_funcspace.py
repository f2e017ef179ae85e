import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperk.errors import DomainError, ExprSyntaxError, NotDifferentiable, UnknownFunction
from hyperk.funcspace import (
    BinOp,
    Call,
    Num,
    SeparableFn,
    X,
    central_diff,
    cr_residual,
    differentiate,
    evaluate,
    holomorphic_derivative,
    lift_separable,
    lift_standard,
    parse,
    to_text,
)
from hyperk.hypnum import Hyp, conjugate

from oracles import CORPUS, central_diff_mp, eval_mp


def test_parse_examples():
    assert parse("x^2 + 3*x") == BinOp("+", BinOp("^", X, Num(2)), BinOp("*", Num(3), X))
    assert parse("sin(x)*exp(x)") == BinOp("*", Call("sin", X), Call("exp", X))
    with pytest.raises(ExprSyntaxError) as info:
        parse("x +")
    assert info.value.position == 3


def test_parse_precedence_and_associativity():
    assert parse("2^3^2") == BinOp("^", Num(2), BinOp("^", Num(3), Num(2)))
    assert parse("1 - 2 - 3") == BinOp("-", BinOp("-", Num(1), Num(2)), Num(3))
    assert parse(" 1 +2*  x ") == parse("1+(2*x)")
    assert evaluate("2^3^2", 0) == 512


@pytest.mark.parametrize("text, pos", [("(x", 2), ("x)", 1), ("2 $ x", 2), ("y", 0), ("", 0)])
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_unknown_function():
    with pytest.raises(UnknownFunction):
        parse("tan(x)")


def test_eval_examples():
    assert evaluate("x^2", 3) == 9
    with pytest.raises(DomainError):
        evaluate("log(x)", 0)
    assert evaluate("abs(x)", -2) == 2


@pytest.mark.parametrize("text, x", [("sqrt(x)", -1), ("1/x", 0), ("x^0.5", -4), ("x^-1", 0)])
def test_domain_errors(text, x):
    with pytest.raises(DomainError):
        evaluate(text, x)


def test_eval_arrays():
    xs = np.linspace(0.5, 2, 7)
    np.testing.assert_allclose(evaluate("x*exp(x)", xs), xs * np.exp(xs))
    assert evaluate("3", xs).shape == xs.shape
    with pytest.raises(DomainError):
        evaluate("log(x - 1)", xs)


def test_differentiate_examples():
    assert differentiate("x^2") == BinOp("*", Num(2), X)
    assert differentiate("sin(x)") == Call("cos", X)
    with pytest.raises(NotDifferentiable):
        differentiate("abs(x)")
    with pytest.raises(NotDifferentiable):
        differentiate("x + abs(2)")


def test_constant_folding():
    assert differentiate("3*x + 2") == Num(3)
    assert differentiate("7") == Num(0)
    assert differentiate("x^3") == BinOp("*", Num(3), BinOp("^", X, Num(2)))


@pytest.mark.parametrize("text", CORPUS)
def test_symbolic_matches_high_precision_difference(text):
    node = parse(text)
    d = differentiate(node)
    for x in np.linspace(0.5, 2.0, 13):
        exact = float(central_diff_mp(node, x, 1e-12))
        assert evaluate(d, x) == pytest.approx(exact, rel=1e-9, abs=1e-12)


def test_central_diff_double():
    assert central_diff("x^3", 1.0, 1e-5) == pytest.approx(3.0, rel=1e-9)
    assert central_diff(math.sin, 0.3) == pytest.approx(math.cos(0.3), rel=1e-9)


@pytest.mark.parametrize("text", CORPUS)
def test_print_round_trip(text):
    tree = parse(text)
    assert parse(to_text(tree)) == tree


@pytest.mark.parametrize("text", CORPUS)
def test_eval_agrees_with_mp(text):
    node = parse(text)
    for x in (0.5, 0.9, 1.3, 2.0):
        assert evaluate(node, x) == pytest.approx(float(eval_mp(node, x)), rel=1e-13, abs=1e-15)


@given(st.sampled_from(CORPUS), st.floats(0.5, 2.0))
def test_eval_is_deterministic(text, x):
    a, b = evaluate(parse(text), x), evaluate(parse(text), x)
    assert a == b and math.copysign(1, a) == math.copysign(1, b)


def test_negated_power_prints_unambiguously():
    tree = parse("(-x)^2")
    assert to_text(tree) == "(-x)^2"
    assert parse(to_text(tree)) == tree


# --- separable functions -------------------------------------------------------------


def test_separable_evaluation():
    F = SeparableFn("x^2", "x^3")
    assert F(Hyp(2, 3)) == Hyp(4, 27)
    G = SeparableFn(math.floor, lambda y: 2 * y)
    assert G(Hyp(1.5, 1.5)) == Hyp(1, 3)
    np.testing.assert_array_equal(G.component(1)(np.array([0.5, 1.5])), [0, 1])


def test_jumps_must_be_sorted():
    with pytest.raises(ValueError):
        SeparableFn("x", "x", jumps1=(0.6, 0.2))


def test_holomorphic_derivative_examples():
    dF = holomorphic_derivative(SeparableFn("x^2", "x^3"))
    assert dF.f1 == parse("2*x") and dF.f2 == parse("3*x^2")
    dI = holomorphic_derivative(SeparableFn.identity())
    assert dI(Hyp(0.3, -5)) == Hyp(1, 1)
    with pytest.raises(NotDifferentiable):
        holomorphic_derivative(SeparableFn("abs(x)", "x"))
    with pytest.raises(NotDifferentiable):
        holomorphic_derivative(SeparableFn(math.sin, "x"))


def test_json_literal():
    F = SeparableFn.from_json({"f1": "x^2", "f2": "sin(x)", "jumps1": [0.5]})
    assert F.jumps1 == (0.5,) and F.jumps2 == ()
    assert SeparableFn.from_json(F.to_json()) == F


def test_cr_residual_identity_and_conjugate():
    xi = Hyp(0.7, -0.2)
    u, v = lift_standard(lambda z: z)
    assert max(cr_residual(u, v, xi, 1e-4)) < 1e-9
    u, v = lift_standard(conjugate)
    for h in (1e-3, 1e-4):
        r = cr_residual(u, v, xi, h)
        assert r[0] == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("f1, f2", [("x^2", "sin(x)"), ("exp(x)", "x^3 - x"), ("log(x + 3)", "cos(2*x)")])
def test_cr_residual_vanishes_for_separable(f1, f2):
    u, v = lift_separable(SeparableFn(f1, f2))
    xi = Hyp(0.4, 0.9)
    r_coarse = max(cr_residual(u, v, xi, 1e-2))
    r_fine = max(cr_residual(u, v, xi, 1e-3))
    assert r_fine < 1e-9 and r_coarse < 1e-6


def test_cr_residual_rejects_bad_step():
    u, v = lift_standard(lambda z: z)
    with pytest.raises(ValueError):
        cr_residual(u, v, Hyp(0, 0), 0)
