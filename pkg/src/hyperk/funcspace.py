"""Component functions: a tiny expression language and separable functions.

Expressions are single-variable (``x``) trees built by a recursive-descent
parser::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' factor)?          # right associative
    base   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')' | '-' base

with ``func`` one of sin, cos, exp, log, sqrt, abs.  Trees are immutable and
hashable; :func:`compile_expr` turns one into a numpy-vectorised callable.

A :class:`SeparableFn` is ``F(xi) = f1(x1)*e1 + f2(x2)*e2`` where each
component is either an expression or a plain Python callable.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Union

import numpy as np

from .errors import DomainError, ExprSyntaxError, NotDifferentiable, UnknownFunction
from .hypnum import Hyp, to_idempotent

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "FUNCTIONS",
    "parse",
    "to_text",
    "compile_expr",
    "evaluate",
    "differentiate",
    "central_diff",
    "contains_abs",
    "SeparableFn",
    "holomorphic_derivative",
    "lift_standard",
    "lift_separable",
    "cr_residual",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs")


# --- AST ----------------------------------------------------------------------

class Expr:
    """Base class of expression nodes."""

    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Num(Expr):
    value: float

    def __repr__(self):
        return f"Num({self.value!r})"


@dataclass(frozen=True, repr=False)
class Var(Expr):
    def __repr__(self):
        return "x"


@dataclass(frozen=True, repr=False)
class Neg(Expr):
    arg: Expr

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True, repr=False)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    _NAMES = {"+": "Add", "-": "Sub", "*": "Mul", "/": "Div", "^": "Pow"}

    def __repr__(self):
        return f"{self._NAMES[self.op]}({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Call(Expr):
    func: str
    arg: Expr

    def __repr__(self):
        return f"{self.func.capitalize()}({self.arg!r})"


X = Var()
PI = math.pi


# --- parser --------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            what = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"expected {value!r}, found {what}", pos)

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.peek()[1] == "^":
            self.take()
            node = BinOp("^", node, self.factor())
        return node

    def base(self):
        kind, val, pos = self.take()
        if kind == "num":
            v = float(val)
            return Num(int(v) if v.is_integer() and re.fullmatch(r"\d+", val) else v)
        if kind == "name":
            if val == "x":
                return X
            if val == "pi":
                return Num(PI)
            if self.peek()[1] == "(":
                if val not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {val!r} at position {pos}")
                self.take()
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            raise ExprSyntaxError(f"unknown name {val!r}", pos)
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if val == "-":
            return Neg(self.base())
        what = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"unexpected {what}", pos)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    >>> parse("x^2 + 3*x")
    Add(Pow(x, Num(2)), Mul(Num(3), x))
    """
    p = _Parser(text)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {val!r}", pos)
    return node


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}


def _prec(node: Expr) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 4
    if isinstance(node, Num) and (node.value < 0 or isinstance(node.value, float) and not math.isfinite(node.value)):
        return 0
    return 5


def _wrap(node: Expr, need: int) -> str:
    text = to_text(node)
    return f"({text})" if _prec(node) < need else text


def to_text(node: Expr) -> str:
    """Render an expression so that :func:`parse` reproduces the same tree."""
    if isinstance(node, Num):
        v = node.value
        if v == PI:
            return "pi"
        return repr(v)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, 4)
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        if node.op == "^":
            # a negated base is legal but reads badly without parentheses
            return f"{_wrap(node.left, 5)}^{_wrap(node.right, 3)}"
        sep = f" {node.op} " if p == 1 else node.op
        return f"{_wrap(node.left, p)}{sep}{_wrap(node.right, p + 1)}"
    raise TypeError(f"not an expression: {node!r}")


# --- evaluation ---------------------------------------------------------------

def _check(cond, message):
    if np.any(cond):
        raise DomainError(message)


def _div(a, b):
    _check(np.asarray(b) == 0, "division by zero")
    return a / b


def _pow(a, b):
    a_arr, b_arr = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    _check((a_arr == 0) & (b_arr < 0), "zero raised to a negative power")
    _check((a_arr < 0) & (b_arr != np.round(b_arr)), "negative base with non-integer exponent")
    with np.errstate(over="ignore"):
        return np.power(a_arr, b_arr)


def _log(a):
    _check(np.asarray(a) <= 0, "log of a non-positive number")
    return np.log(a)


def _sqrt(a):
    _check(np.asarray(a) < 0, "sqrt of a negative number")
    return np.sqrt(a)


_UNARY = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "log": _log, "sqrt": _sqrt, "abs": np.abs}
_BINARY = {"+": np.add, "-": np.subtract, "*": np.multiply, "/": _div, "^": _pow}


def _const_pow(k: float) -> Callable:
    """Power with a literal exponent; skips the checks that cannot fire."""
    if k == 2:
        return lambda a: a * a
    if k == 1:
        return lambda a: a
    if k == int(k) and abs(k) <= 16:
        n = abs(int(k))

        def ipow(a):
            if k < 0:
                _check(np.asarray(a) == 0, "zero raised to a negative power")
            out, base, m = 1.0, a, n
            with np.errstate(over="ignore"):
                while m:  # square-and-multiply beats the generic pow loop
                    if m & 1:
                        out = out * base
                    m >>= 1
                    if m:
                        base = base * base
                return 1.0 / out if k < 0 else out
        return ipow
    if k == int(k):
        def bigpow(a):
            if k < 0:
                _check(np.asarray(a) == 0, "zero raised to a negative power")
            with np.errstate(over="ignore"):
                return np.power(a, k)
        return bigpow

    def fpow(a):
        _check(np.asarray(a) < 0, "negative base with non-integer exponent")
        if k < 0:
            _check(np.asarray(a) == 0, "zero raised to a negative power")
        with np.errstate(over="ignore"):
            return np.power(a, k)
    return fpow


def _compile(node: Expr) -> Callable:
    # constants stay scalars here and broadcast against the other operand
    if isinstance(node, Num):
        value = float(node.value)
        return lambda x: value
    if isinstance(node, Var):
        return lambda x: x
    if isinstance(node, Neg):
        inner = _compile(node.arg)
        return lambda x: np.negative(inner(x))
    if isinstance(node, Call):
        fn, inner = _UNARY[node.func], _compile(node.arg)
        return lambda x: fn(inner(x))
    if isinstance(node, BinOp):
        lhs = _compile(node.left)
        if node.op == "^" and isinstance(node.right, Num):
            pw = _const_pow(float(node.right.value))
            return lambda x: pw(lhs(x))
        fn, rhs = _BINARY[node.op], _compile(node.right)
        return lambda x: fn(lhs(x), rhs(x))
    raise TypeError(f"not an expression: {node!r}")


@lru_cache(maxsize=1024)
def compile_expr(node: Expr) -> Callable:
    """Closure evaluating ``node`` on a float or a numpy array."""
    inner = _compile(node)

    def run(x):
        out = inner(x)
        if isinstance(x, np.ndarray) and np.ndim(out) == 0:
            return np.full_like(x, out, dtype=float)
        return out
    return run


def evaluate(node: Union[Expr, str], x):
    """Evaluate at a real ``x`` (returns ``float``) or elementwise on an array."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(x, np.ndarray):
        return np.asarray(compile_expr(node)(np.asarray(x, dtype=float)), dtype=float)
    with np.errstate(over="ignore"):
        return float(compile_expr(node)(np.float64(x)))


# --- symbolic differentiation ---------------------------------------------------

def contains_abs(node: Expr) -> bool:
    if isinstance(node, Call):
        return node.func == "abs" or contains_abs(node.arg)
    if isinstance(node, Neg):
        return contains_abs(node.arg)
    if isinstance(node, BinOp):
        return contains_abs(node.left) or contains_abs(node.right)
    return False


def _is(node, value) -> bool:
    return isinstance(node, Num) and node.value == value


def _fold(value):
    value = float(value)
    return Num(int(value) if value.is_integer() and abs(value) < 2**53 else value)


def _neg(a):
    if isinstance(a, Num):
        return _fold(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _add(a, b):
    if isinstance(a, Num) and isinstance(b, Num):
        return _fold(a.value + b.value)
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    return BinOp("+", a, b)


def _sub(a, b):
    if isinstance(a, Num) and isinstance(b, Num):
        return _fold(a.value - b.value)
    if _is(b, 0):
        return a
    if _is(a, 0):
        return _neg(b)
    return BinOp("-", a, b)


def _mul(a, b):
    if isinstance(a, Num) and isinstance(b, Num):
        return _fold(a.value * b.value)
    if _is(a, 0) or _is(b, 0):
        return Num(0)
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if isinstance(b, Num):
        a, b = b, a
    return BinOp("*", a, b)


def _divide(a, b):
    if isinstance(a, Num) and isinstance(b, Num) and b.value != 0:
        return _fold(a.value / b.value)
    if _is(a, 0):
        return Num(0)
    if _is(b, 1):
        return a
    return BinOp("/", a, b)


def _power(a, b):
    if isinstance(a, Num) and isinstance(b, Num):
        try:
            return _fold(a.value ** b.value)
        except (OverflowError, ZeroDivisionError):
            pass
    if _is(b, 1):
        return a
    if _is(b, 0):
        return Num(1)
    return BinOp("^", a, b)


def _has_x(node: Expr) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, (Neg, Call)):
        return _has_x(node.arg)
    if isinstance(node, BinOp):
        return _has_x(node.left) or _has_x(node.right)
    return False


def _d(node: Expr) -> Expr:
    if isinstance(node, Num):
        return Num(0)
    if isinstance(node, Var):
        return Num(1)
    if isinstance(node, Neg):
        return _neg(_d(node.arg))
    if isinstance(node, Call):
        u, du = node.arg, _d(node.arg)
        outer = {
            "sin": lambda: Call("cos", u),
            "cos": lambda: _neg(Call("sin", u)),
            "exp": lambda: Call("exp", u),
            "log": lambda: _divide(Num(1), u),
            "sqrt": lambda: _divide(Num(1), _mul(Num(2), Call("sqrt", u))),
        }[node.func]()
        return _mul(outer, du)
    u, v = node.left, node.right
    if node.op == "+":
        return _add(_d(u), _d(v))
    if node.op == "-":
        return _sub(_d(u), _d(v))
    if node.op == "*":
        return _add(_mul(_d(u), v), _mul(u, _d(v)))
    if node.op == "/":
        return _divide(_sub(_mul(_d(u), v), _mul(u, _d(v))), _power(v, Num(2)))
    if node.op == "^":
        if not _has_x(v):
            return _mul(_mul(v, _power(u, _sub(v, Num(1)))), _d(u))
        if not _has_x(u):
            return _mul(_mul(node, Call("log", u)), _d(v))
        # u^v = exp(v log u)
        return _mul(node, _add(_mul(_d(v), Call("log", u)), _divide(_mul(v, _d(u)), u)))
    raise TypeError(f"not an expression: {node!r}")


def differentiate(node: Union[Expr, str]) -> Expr:
    """Symbolic derivative with respect to ``x``, constants folded.

    Raises :class:`NotDifferentiable` if the tree contains ``abs``.
    """
    if isinstance(node, str):
        node = parse(node)
    if contains_abs(node):
        raise NotDifferentiable("abs is not differentiable at 0")
    return _d(node)


def central_diff(f, x, h: float = 1e-5):
    """Second-order central difference of ``f`` (expression or callable)."""
    if isinstance(f, (Expr, str)):
        node = parse(f) if isinstance(f, str) else f
        f = lambda t: evaluate(node, t)
    return (f(x + h) - f(x - h)) / (2 * h)


# --- separable functions ---------------------------------------------------------

Component = Union[Expr, Callable[[float], float]]


def _vectorize(fn: Callable) -> Callable:
    def call(x):
        if isinstance(x, np.ndarray):
            try:
                out = fn(x)
                if isinstance(out, np.ndarray) and out.shape == x.shape:
                    return out.astype(float)
            except (TypeError, ValueError):
                pass
            return np.array([float(fn(float(v))) for v in x.ravel()]).reshape(x.shape)
        return float(fn(x))

    return call


def _as_component(c) -> Component:
    if isinstance(c, str):
        return parse(c)
    if isinstance(c, (int, float)):
        return Num(c)
    if isinstance(c, Expr) or callable(c):
        return c
    raise TypeError(f"cannot use {c!r} as a component function")


@dataclass(frozen=True)
class SeparableFn:
    """``F(xi) = f1(x1)*e1 + f2(x2)*e2`` with optional declared jump abscissae."""

    f1: Component
    f2: Component
    jumps1: tuple = ()
    jumps2: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "f1", _as_component(self.f1))
        object.__setattr__(self, "f2", _as_component(self.f2))
        for attr in ("jumps1", "jumps2"):
            jumps = tuple(getattr(self, attr))
            if list(jumps) != sorted(jumps):
                raise ValueError(f"{attr} must be sorted")
            object.__setattr__(self, attr, jumps)

    @classmethod
    def identity(cls) -> "SeparableFn":
        return cls(X, X, name="identity")

    @classmethod
    def constant(cls, c) -> "SeparableFn":
        if isinstance(c, Hyp):
            return cls(Num(c.a1), Num(c.a2))
        return cls(Num(c), Num(c))

    @classmethod
    def from_json(cls, obj) -> "SeparableFn":
        return cls(
            obj["f1"],
            obj["f2"],
            tuple(float(v) for v in obj.get("jumps1", ())),
            tuple(float(v) for v in obj.get("jumps2", ())),
        )

    def to_json(self) -> dict:
        if not self.is_expr:
            raise TypeError("only expression-backed functions serialise to JSON")
        out = {"f1": to_text(self.f1), "f2": to_text(self.f2)}
        if self.jumps1:
            out["jumps1"] = list(self.jumps1)
        if self.jumps2:
            out["jumps2"] = list(self.jumps2)
        return out

    @property
    def is_expr(self) -> bool:
        return isinstance(self.f1, Expr) and isinstance(self.f2, Expr)

    def component(self, i: int) -> Callable:
        """Vectorised real function for component ``i`` (1 or 2)."""
        c = self.f1 if i == 1 else self.f2
        if isinstance(c, Expr):
            return lambda x: evaluate(c, x)
        return _vectorize(c)

    def jumps(self, i: int) -> tuple:
        return self.jumps1 if i == 1 else self.jumps2

    def __call__(self, xi: Hyp) -> Hyp:
        return Hyp(self.component(1)(xi.a1), self.component(2)(xi.a2))

    def general(self) -> tuple:
        """The same function as a pair of two-argument component callables."""
        g1, g2 = self.component(1), self.component(2)
        return (lambda x1, x2: g1(x1)), (lambda x1, x2: g2(x2))

    def __mul__(self, other: "SeparableFn") -> "SeparableFn":
        if self.is_expr and other.is_expr:
            return SeparableFn(BinOp("*", self.f1, other.f1), BinOp("*", self.f2, other.f2))
        a1, a2, b1, b2 = (self.component(1), self.component(2), other.component(1), other.component(2))
        return SeparableFn(lambda x: a1(x) * b1(x), lambda x: a2(x) * b2(x))

    def __str__(self):
        def show(c):
            return to_text(c) if isinstance(c, Expr) else getattr(c, "__name__", "<fn>")

        return f"({show(self.f1)})e1 + ({show(self.f2)})e2"


def holomorphic_derivative(F: SeparableFn) -> SeparableFn:
    """``F' = f1'(x1)*e1 + f2'(x2)*e2`` for expression-backed components."""
    if not F.is_expr:
        raise NotDifferentiable("native component functions carry no symbolic derivative")
    return SeparableFn(differentiate(F.f1), differentiate(F.f2))


def lift_standard(func: Callable[[Hyp], Hyp]) -> tuple:
    """Write a map ``K -> K`` as standard-coordinate parts ``(u(t, s), v(t, s))``."""

    def u(t, s):
        return func(to_idempotent(t, s)).t

    def v(t, s):
        return func(to_idempotent(t, s)).s

    return u, v


def lift_separable(F: SeparableFn) -> tuple:
    g1, g2 = F.component(1), F.component(2)

    def u(t, s):
        return (g1(t + s) + g2(t - s)) / 2

    def v(t, s):
        return (g1(t + s) - g2(t - s)) / 2

    return u, v


def cr_residual(u: Callable, v: Callable, xi: Hyp, h: float = 1e-5) -> tuple:
    """Central-difference residuals of the hyperbolic Cauchy-Riemann system.

    For ``F = u(t, s) + v(t, s)*k`` the system reads ``u_t = v_s`` and
    ``u_s = v_t``; the absolute defects of both identities are returned.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    t, s = xi.t, xi.s
    u_t = (u(t + h, s) - u(t - h, s)) / (2 * h)
    u_s = (u(t, s + h) - u(t, s - h)) / (2 * h)
    v_t = (v(t + h, s) - v(t - h, s)) / (2 * h)
    v_s = (v(t, s + h) - v(t, s - h)) / (2 * h)
    return abs(u_t - v_s), abs(u_s - v_t)
