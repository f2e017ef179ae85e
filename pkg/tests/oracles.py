"""Independent reference computations used by the tests."""
import math
from fractions import Fraction

import mpmath

from hyperk.funcspace import Call, Neg, Num, Var

mpmath.mp.dps = 50

_MP_FUNCS = {
    "sin": mpmath.sin, "cos": mpmath.cos, "exp": mpmath.exp,
    "log": mpmath.log, "sqrt": mpmath.sqrt, "abs": abs,
}


def eval_mp(node, x):
    """High-precision evaluation of an expression tree (own recursion, no numpy)."""
    if isinstance(node, Num):
        return mpmath.pi if node.value == math.pi else mpmath.mpf(node.value)
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -eval_mp(node.arg, x)
    if isinstance(node, Call):
        return _MP_FUNCS[node.func](eval_mp(node.arg, x))
    a, b = eval_mp(node.left, x), eval_mp(node.right, x)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return a / b
    return a ** b


def central_diff_mp(node, x, h):
    x, h = mpmath.mpf(x), mpmath.mpf(h)
    return (eval_mp(node, x + h) - eval_mp(node, x - h)) / (2 * h)


def real_variation_bruteforce(f, xs):
    return sum(abs(f(b) - f(a)) for a, b in zip(xs, xs[1:]))


def dyadic(n, bits=10):
    return Fraction(n, 2**bits)


# 50 smooth expressions, all defined on [0.5, 2]
CORPUS = [
    "x", "x^2", "x^3 - 2*x", "3*x^4 - x^2 + 1", "x^5/5", "1/x", "1/(1 + x^2)", "x/(x + 1)",
    "sqrt(x)", "sqrt(1 + x^2)", "x*sqrt(x)", "exp(x)", "exp(-x)", "exp(-x^2)", "x*exp(x)",
    "exp(x)/x", "log(x)", "log(1 + x)", "x*log(x)", "log(x)^2", "log(x^2 + 1)", "sin(x)",
    "cos(x)", "sin(2*x)", "cos(3*x) + sin(x)", "sin(x)^2", "x*sin(x)", "sin(x)/x", "cos(x)*exp(x)",
    "sin(exp(x))", "exp(sin(x))", "sqrt(2 + sin(x))", "log(2 + cos(x))", "x^x", "2^x", "x^(1/3)",
    "(x + 1)^-2", "-x^2", "-(x - 1)^3", "x^2*cos(x) - sin(x)", "(x^2 - 1)/(x^2 + 1)",
    "exp(x)*sin(x)*cos(x)", "sqrt(x)*log(x)", "1/sqrt(x)", "x^3*exp(-x)", "sin(pi*x)",
    "cos(pi*x/2)^2", "log(sqrt(x) + 1)", "exp(-1/x)", "(sin(x) + 2)^(1/2)",
]
assert len(CORPUS) == 50
