"""Hyperbolic numbers t + s*k (k**2 = 1) stored in idempotent coordinates.

Every element is written uniquely as ``a1*e1 + a2*e2`` with
``e1 = (1 + k)/2`` and ``e2 = (1 - k)/2``.  In these coordinates addition,
multiplication, the partial order and the hyperbolic-valued module all act
component by component, so :class:`Hyp` keeps only the pair ``(a1, a2)``.

Components may be ``int``, ``float`` or :class:`fractions.Fraction`; the
arithmetic is generic, so exact rational inputs stay exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Literal

from .errors import EmptySet, ZeroDivisorDenominator

__all__ = [
    "Hyp",
    "E1",
    "E2",
    "K",
    "ONE",
    "ZERO",
    "to_idempotent",
    "to_standard",
    "arith",
    "div",
    "conjugate",
    "k_module",
    "metric",
    "partial_leq",
    "strict_less",
    "comparable",
    "sup_set",
    "inf_set",
    "parse_scalar",
    "scalar_to_json",
    "hyp_from_json",
    "hyp_to_json",
]


@dataclass(frozen=True)
class Hyp:
    """A hyperbolic number ``a1*e1 + a2*e2``."""

    a1: Real
    a2: Real

    @classmethod
    def real(cls, x: Real) -> "Hyp":
        """Embed a real number as ``x*e1 + x*e2``."""
        return cls(x, x)

    @property
    def t(self):
        return (self.a1 + self.a2) / 2

    @property
    def s(self):
        return (self.a1 - self.a2) / 2

    def __iter__(self):
        yield self.a1
        yield self.a2

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Hyp(self.a1 + other.a1, self.a2 + other.a2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Hyp(self.a1 - other.a1, self.a2 - other.a2)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Hyp(self.a1 * other.a1, self.a2 * other.a2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return div(self, other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return div(other, self)

    def __neg__(self):
        return Hyp(-self.a1, -self.a2)

    def __abs__(self):
        return k_module(self)

    def __le__(self, other):
        return partial_leq(self, _coerce(other))

    def __lt__(self, other):
        return strict_less(self, _coerce(other))

    def __ge__(self, other):
        return partial_leq(_coerce(other), self)

    def __gt__(self, other):
        return strict_less(_coerce(other), self)

    def is_zero_divisor(self) -> bool:
        """True for zero and for every nonzero multiple of ``e1`` or ``e2``."""
        return self.a1 == 0 or self.a2 == 0

    def __repr__(self) -> str:
        return f"Hyp({self.a1!r}, {self.a2!r})"


def _coerce(x):
    if isinstance(x, Hyp):
        return x
    if isinstance(x, Real):
        return Hyp(x, x)
    return NotImplemented


E1 = Hyp(1, 0)
E2 = Hyp(0, 1)
K = Hyp(1, -1)
ONE = Hyp(1, 1)
ZERO = Hyp(0, 0)


def to_idempotent(t: Real, s: Real) -> Hyp:
    """``t + s*k`` -> ``(t + s)*e1 + (t - s)*e2``."""
    return Hyp(t + s, t - s)


def to_standard(h: Hyp) -> tuple:
    """Inverse of :func:`to_idempotent`; returns ``(t, s)``."""
    return h.t, h.s


def arith(a: Hyp, b: Hyp, op: Literal["add", "sub", "mul"]) -> Hyp:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def div(a: Hyp, b: Hyp) -> Hyp:
    """Ring quotient, defined only when ``b`` is not a zero divisor."""
    if b.a1 == 0 or b.a2 == 0:
        raise ZeroDivisorDenominator(f"{b!r} is zero or a zero divisor")
    return Hyp(a.a1 / b.a1, a.a2 / b.a2)


def conjugate(a: Hyp) -> Hyp:
    return Hyp(a.a2, a.a1)


def k_module(a: Hyp) -> Hyp:
    """Hyperbolic-valued module ``|a1|*e1 + |a2|*e2``."""
    return Hyp(abs(a.a1), abs(a.a2))


def metric(a: Hyp, b: Hyp) -> Hyp:
    return k_module(a - b)


def partial_leq(a: Hyp, b: Hyp) -> bool:
    return a.a1 <= b.a1 and a.a2 <= b.a2


def strict_less(a: Hyp, b: Hyp) -> bool:
    # Both components must be strict; a shared component does not count.
    return a.a1 < b.a1 and a.a2 < b.a2


def comparable(a: Hyp, b: Hyp) -> bool:
    return partial_leq(a, b) or partial_leq(b, a)


def sup_set(elements: Iterable[Hyp]) -> Hyp:
    """Component-wise supremum of a finite nonempty set (need not belong to it)."""
    elements = list(elements)
    if not elements:
        raise EmptySet("supremum of an empty set")
    return Hyp(max(e.a1 for e in elements), max(e.a2 for e in elements))


def inf_set(elements: Iterable[Hyp]) -> Hyp:
    elements = list(elements)
    if not elements:
        raise EmptySet("infimum of an empty set")
    return Hyp(min(e.a1 for e in elements), min(e.a2 for e in elements))


# --- textual form -----------------------------------------------------------

def parse_scalar(value) -> Real:
    """Read a JSON/CLI scalar.

    Integers and rational strings such as ``"1/3"`` become exact
    (``int``/``Fraction``); anything with a decimal point or exponent is
    parsed as a float.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a number: {value!r}") from exc
        if any(c in text for c in ".eE") and "/" not in text:
            return float(text)
        return q.numerator if q.denominator == 1 else q
    raise TypeError(f"not a number: {value!r}")


def scalar_to_json(x: Real):
    """Exact values stay exact: non-integral fractions are written as ``"p/q"``."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return x
    return float(x)


def hyp_from_json(obj) -> Hyp:
    """Accept ``{"e1":…, "e2":…}``, ``{"t":…, "s":…}`` or a bare real."""
    if isinstance(obj, dict):
        if "e1" in obj and "e2" in obj:
            return Hyp(parse_scalar(obj["e1"]), parse_scalar(obj["e2"]))
        if "t" in obj and "s" in obj:
            return to_idempotent(parse_scalar(obj["t"]), parse_scalar(obj["s"]))
        raise ValueError(f"hyperbolic number needs e1/e2 or t/s keys: {obj!r}")
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return Hyp(parse_scalar(obj[0]), parse_scalar(obj[1]))
    x = parse_scalar(obj)
    return Hyp(x, x)


def hyp_to_json(h: Hyp) -> dict:
    return {"e1": scalar_to_json(h.a1), "e2": scalar_to_json(h.a2)}
