"""Order intervals ``[lo, hi]_k = {xi : lo <= xi <= hi}``.

Geometrically an interval is the axis-aligned rectangle
``[a1, b1] x [a2, b2]`` in idempotent coordinates.  Degenerate intervals
(zero extent in one component) are segments and are perfectly valid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import NotOrdered
from .hypnum import Hyp, hyp_from_json, hyp_to_json, partial_leq, strict_less

__all__ = ["HypInterval", "make_interval", "length", "contains", "project"]


@dataclass(frozen=True)
class HypInterval:
    lo: Hyp
    hi: Hyp

    def __post_init__(self):
        if not partial_leq(self.lo, self.hi):
            raise NotOrdered(f"{self.lo!r} is not below {self.hi!r}")

    @classmethod
    def real(cls, x, y) -> "HypInterval":
        return cls(Hyp(x, x), Hyp(y, y))

    @property
    def length(self) -> Hyp:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo.a1 == self.hi.a1 or self.lo.a2 == self.hi.a2

    @property
    def e1(self) -> tuple:
        return self.lo.a1, self.hi.a1

    @property
    def e2(self) -> tuple:
        return self.lo.a2, self.hi.a2

    def contains(self, xi: Hyp, mode: Literal["closed", "open"] = "closed") -> bool:
        return contains(self, xi, mode)

    def includes(self, other: "HypInterval") -> bool:
        """True when ``other`` is a (closed) sub-interval of ``self``."""
        return partial_leq(self.lo, other.lo) and partial_leq(other.hi, self.hi)

    def area(self):
        """Planar (Euclidean) area of the rectangle."""
        return (self.hi.a1 - self.lo.a1) * (self.hi.a2 - self.lo.a2)

    def to_json(self) -> dict:
        return {"lo": hyp_to_json(self.lo), "hi": hyp_to_json(self.hi)}

    @classmethod
    def from_json(cls, obj) -> "HypInterval":
        if isinstance(obj, dict):
            return cls(hyp_from_json(obj["lo"]), hyp_from_json(obj["hi"]))
        lo, hi = obj
        return cls(hyp_from_json(lo), hyp_from_json(hi))


def make_interval(lo: Hyp, hi: Hyp) -> HypInterval:
    return HypInterval(lo, hi)


def length(interval: HypInterval) -> Hyp:
    return interval.length


def contains(interval: HypInterval, xi: Hyp, mode: str = "closed") -> bool:
    if mode == "closed":
        return partial_leq(interval.lo, xi) and partial_leq(xi, interval.hi)
    if mode == "open":
        return strict_less(interval.lo, xi) and strict_less(xi, interval.hi)
    raise ValueError(f"unknown membership mode {mode!r}")


def project(interval: HypInterval) -> tuple:
    """Idempotent projections ``([a1, b1], [a2, b2])`` as pairs of endpoints."""
    return interval.e1, interval.e2
