"""Regular, weak and strong partitions of a hyperbolic interval.

A *regular* partition tiles the rectangle by planar area, a *weak* one has
hyperbolic lengths summing to the parent length, and a *strong* one is a
chain ``alpha = rho_0 <= rho_1 <= ... <= rho_n = beta``.  Only strong
partitions telescope for every configuration, which is why the variation and
integration modules are built on them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from numbers import Real
from typing import Iterable, Literal, Optional, Sequence

from .errors import PieceOutsideParent
from .hypnum import Hyp, hyp_from_json, hyp_to_json, partial_leq, strict_less
from .interval import HypInterval

__all__ = [
    "RealPartition",
    "StrongPartition",
    "IntervalCollection",
    "RegularVerdict",
    "WeakVerdict",
    "StrongVerdict",
    "union_area",
    "check_regular",
    "check_weak",
    "check_strong",
    "gen_strong",
    "subintervals",
    "diameter",
    "refine",
    "STRATEGIES",
]

Strategy = Literal["e1_first", "e2_first", "diagonal", "seeded_random"]
STRATEGIES = ("e1_first", "e2_first", "diagonal", "seeded_random")

WEAK_TOL = 1e-12


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


# --- data types ---------------------------------------------------------------

@dataclass(frozen=True)
class RealPartition:
    """Strictly increasing points ``a = p_0 < ... < p_n = b``.

    A single point is allowed and stands for a zero-width projection of a
    degenerate interval.
    """

    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("a real partition needs at least one point")
        for p, q in zip(pts, pts[1:]):
            if not p < q:
                raise ValueError(f"partition points must increase strictly: {p!r} >= {q!r}")

    @classmethod
    def uniform(cls, a, b, n: int) -> "RealPartition":
        if a == b:
            return cls((a,))
        step = (b - a) / n
        return cls(tuple(a + i * step for i in range(n)) + (b,))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def diameter(self):
        if len(self.points) == 1:
            return 0
        return max(q - p for p, q in zip(self.points, self.points[1:]))


@dataclass(frozen=True)
class StrongPartition:
    """A validated chain of distinct points from ``alpha`` to ``beta``."""

    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("a strong partition needs at least one point")
        verdict = check_strong(pts, HypInterval(pts[0], pts[-1]) if partial_leq(pts[0], pts[-1]) else None)
        if not verdict:
            raise ValueError(f"not a strong partition: {verdict.violation} ({verdict.detail})")

    @property
    def parent(self) -> HypInterval:
        return HypInterval(self.points[0], self.points[-1])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def projections(self) -> tuple:
        """Projected real partitions with consecutive repeats removed."""
        return (
            RealPartition(_dedupe(p.a1 for p in self.points)),
            RealPartition(_dedupe(p.a2 for p in self.points)),
        )

    def to_json(self) -> dict:
        return {"points": [hyp_to_json(p) for p in self.points]}

    @classmethod
    def from_json(cls, obj) -> "StrongPartition":
        pts = obj["points"] if isinstance(obj, dict) else obj
        return cls(tuple(hyp_from_json(p) for p in pts))


@dataclass(frozen=True)
class IntervalCollection:
    parent: HypInterval
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def to_json(self) -> dict:
        return {"parent": self.parent.to_json(), "pieces": [p.to_json() for p in self.pieces]}

    @classmethod
    def from_json(cls, obj) -> "IntervalCollection":
        return cls(
            HypInterval.from_json(obj["parent"]),
            tuple(HypInterval.from_json(p) for p in obj["pieces"]),
        )


def _dedupe(values: Iterable) -> tuple:
    out = []
    for v in values:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


# --- verdicts -----------------------------------------------------------------

@dataclass(frozen=True)
class RegularVerdict:
    regular: bool
    reason: Optional[str] = None  # "overlap", "gap" or "outside"
    covered_area: Real = 0
    parent_area: Real = 0
    gap: bool = False
    overlap: bool = False

    def __bool__(self):
        return self.regular


@dataclass(frozen=True)
class WeakVerdict:
    weak: bool
    length_sum: Hyp
    parent_length: Hyp
    deficit: Hyp
    covers: Optional[bool] = None

    def __bool__(self):
        return self.weak


@dataclass(frozen=True)
class StrongVerdict:
    strong: bool
    violation: Optional[str] = None  # duplicate, incomparable_pair, wrong_endpoints, not_sorted
    detail: str = ""

    def __bool__(self):
        return self.strong


# --- regular partitions: exact rectangle sweep ----------------------------------

def _coverage_grid(rects: Sequence[HypInterval]):
    """Cell multiplicities over the compressed coordinate grid.

    Returns ``(xs, ys, counts)`` where ``counts[i][j]`` is the number of
    rectangles whose interior contains cell ``(xs[i], xs[i+1]) x (ys[j], ys[j+1])``.
    Zero-width rectangles never cover a cell.
    """
    xs = sorted({r.lo.a1 for r in rects} | {r.hi.a1 for r in rects})
    ys = sorted({r.lo.a2 for r in rects} | {r.hi.a2 for r in rects})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    nx, ny = len(xs), len(ys)
    diff = [[0] * (ny + 1) for _ in range(nx + 1)]
    for r in rects:
        i0, i1 = xi[r.lo.a1], xi[r.hi.a1]
        j0, j1 = yi[r.lo.a2], yi[r.hi.a2]
        if i0 == i1 or j0 == j1:
            continue
        diff[i0][j0] += 1
        diff[i1][j0] -= 1
        diff[i0][j1] -= 1
        diff[i1][j1] += 1
    counts = [list(accumulate(row)) for row in diff]
    for i in range(1, nx + 1):
        prev, cur = counts[i - 1], counts[i]
        for j in range(ny + 1):
            cur[j] += prev[j]
    return xs, ys, counts


def union_area(rects: Iterable[HypInterval]):
    """Planar area of a union of rectangles, computed by coordinate compression."""
    rects = list(rects)
    if not rects:
        return 0
    xs, ys, counts = _coverage_grid(rects)
    total = 0
    for i in range(len(xs) - 1):
        w = xs[i + 1] - xs[i]
        row = counts[i]
        for j in range(len(ys) - 1):
            if row[j] > 0:
                total += w * (ys[j + 1] - ys[j])
    return total


def _covers_segment(lo, hi, spans) -> bool:
    reach = lo
    for a, b in sorted(spans):
        if a > reach:
            return False
        reach = max(reach, b)
        if reach >= hi:
            return True
    return reach >= hi


def check_regular(collection: IntervalCollection) -> RegularVerdict:
    """Exact verdict on whether the pieces tile the parent by planar area.

    Every piece must lie inside the parent, no cell of the compressed grid
    may be covered twice (positive-area overlap) and every cell of the parent
    must be covered (no gap).  No floating-point areas are compared.
    """
    parent, pieces = collection.parent, collection.pieces
    parent_area = parent.area()
    for p in pieces:
        if not parent.includes(p):
            return RegularVerdict(False, "outside", union_area(pieces), parent_area)
    if parent.is_degenerate:
        # Zero planar area: the only question left is set coverage of the segment.
        if parent.lo.a1 == parent.hi.a1 and parent.lo.a2 == parent.hi.a2:
            ok = bool(pieces)
        elif parent.lo.a1 == parent.hi.a1:
            ok = _covers_segment(parent.lo.a2, parent.hi.a2, [p.e2 for p in pieces])
        else:
            ok = _covers_segment(parent.lo.a1, parent.hi.a1, [p.e1 for p in pieces])
        return RegularVerdict(ok, None if ok else "gap", 0, 0, gap=not ok)

    xs, ys, counts = _coverage_grid(list(pieces) + [parent])
    covered = 0
    reason = None
    gap = overlap = False
    for i in range(len(xs) - 1):
        if not parent.lo.a1 <= xs[i] < parent.hi.a1:
            continue
        w = xs[i + 1] - xs[i]
        for j in range(len(ys) - 1):
            if not parent.lo.a2 <= ys[j] < parent.hi.a2:
                continue
            mult = counts[i][j] - 1  # the parent itself covers every inner cell once
            if mult > 1:
                overlap = True
                reason = reason or "overlap"
            elif mult == 0:
                gap = True
                reason = reason or "gap"
            if mult > 0:
                covered += w * (ys[j + 1] - ys[j])
    return RegularVerdict(reason is None, reason, covered, parent_area, gap, overlap)


# --- weak partitions ------------------------------------------------------------

def _equal(a: Hyp, b: Hyp, tol: float) -> bool:
    exact = all(_is_exact(v) for v in (a.a1, a.a2, b.a1, b.a2))
    if exact:
        return a == b
    return abs(a.a1 - b.a1) <= tol and abs(a.a2 - b.a2) <= tol


def check_weak(collection: IntervalCollection, strict: bool = False, tol: float = WEAK_TOL) -> WeakVerdict:
    """Weak when the piece lengths add up to the parent length.

    Set coverage of the parent is not required by default; ``strict=True``
    additionally demands that the pieces cover the parent as a planar set.
    """
    parent, pieces = collection.parent, collection.pieces
    for p in pieces:
        if not parent.includes(p):
            raise PieceOutsideParent(f"{p!r} is not inside {parent!r}")
    total = sum((p.length for p in pieces), Hyp(0, 0))
    deficit = total - parent.length
    weak = _equal(total, parent.length, tol)
    covers = None
    if strict:
        verdict = check_regular(collection)
        covers = not verdict.gap
        weak = weak and covers
    return WeakVerdict(weak, total, parent.length, deficit, covers)


# --- strong partitions -----------------------------------------------------------

def check_strong(points: Sequence[Hyp], parent: Optional[HypInterval]) -> StrongVerdict:
    pts = list(points)
    if not pts:
        return StrongVerdict(False, "wrong_endpoints", "no points")
    if len(set(pts)) != len(pts):
        seen = set()
        dup = next(p for p in pts if p in seen or seen.add(p))
        return StrongVerdict(False, "duplicate", repr(dup))
    # A finite set is a chain iff sorting by (a1, a2) also sorts a2.
    ordered = sorted(pts, key=lambda p: (p.a1, p.a2))
    for p, q in zip(ordered, ordered[1:]):
        if q.a2 < p.a2:
            return StrongVerdict(False, "incomparable_pair", f"{p!r} and {q!r}")
    if parent is None or pts[0] != parent.lo or pts[-1] != parent.hi:
        return StrongVerdict(False, "wrong_endpoints", f"chain runs {pts[0]!r} .. {pts[-1]!r}")
    for p, q in zip(pts, pts[1:]):
        if not partial_leq(p, q):
            return StrongVerdict(False, "not_sorted", f"{p!r} listed before {q!r}")
    return StrongVerdict(True)


def _as_real_partition(p) -> RealPartition:
    return p if isinstance(p, RealPartition) else RealPartition(tuple(p))


def _lattice_path(P: tuple, Q: tuple, strategy: str, rng: random.Random) -> list:
    """Index pairs of a monotone path from (0, 0) to (len(P)-1, len(Q)-1).

    The deterministic strategies walk the staircase that merges ``P`` and
    ``Q`` by relative position inside their intervals: the index whose next
    value comes first advances.  They differ only at ties, where
    ``e1_first`` moves along e1, ``e2_first`` along e2 and ``diagonal``
    moves both.  ``seeded_random`` picks any admissible move.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    s, t = len(P) - 1, len(Q) - 1
    span_p = P[-1] - P[0]
    span_q = Q[-1] - Q[0]
    i = j = 0
    path = [(0, 0)]
    while (i, j) != (s, t):
        can_i, can_j = i < s, j < t
        if not (can_i and can_j):
            step = (int(can_i), int(can_j))
        elif strategy == "seeded_random":
            step = rng.choice(((1, 0), (0, 1), (1, 1)))
        else:
            # compare (P[i+1]-P[0])/span_p with (Q[j+1]-Q[0])/span_q without dividing
            lhs = (P[i + 1] - P[0]) * span_q
            rhs = (Q[j + 1] - Q[0]) * span_p
            if lhs < rhs:
                step = (1, 0)
            elif rhs < lhs:
                step = (0, 1)
            else:
                step = {"e1_first": (1, 0), "e2_first": (0, 1), "diagonal": (1, 1)}[strategy]
        i, j = i + step[0], j + step[1]
        path.append((i, j))
    return path


def gen_strong(P, Q, strategy: Strategy = "e1_first", seed: int = 0) -> StrongPartition:
    """Lift two real partitions to a strong partition with projections ``P`` and ``Q``.

    Each step advances at least one projection index, so the result has at
    most ``len(P) + len(Q) - 1`` points.  It is not unique: different
    strategies give different monotone lattice paths through ``P x Q``.
    """
    P, Q = _as_real_partition(P), _as_real_partition(Q)
    path = _lattice_path(P.points, Q.points, strategy, random.Random(seed))
    return StrongPartition(tuple(Hyp(P.points[i], Q.points[j]) for i, j in path))


def subintervals(partition: StrongPartition) -> list:
    pts = partition.points
    return [HypInterval(p, q) for p, q in zip(pts, pts[1:])]


def diameter(partition: StrongPartition) -> Hyp:
    """Component-wise largest gap of the (deduplicated) projections."""
    P, Q = partition.projections()
    return Hyp(P.diameter, Q.diameter)


def _bisect_until(values: tuple, target) -> tuple:
    out = [values[0]]
    for a, b in zip(values, values[1:]):
        pieces = [(a, b)]
        while any(y - x > target for x, y in pieces):
            nxt = []
            for x, y in pieces:
                if y - x > target:
                    m = x + (y - x) / 2
                    nxt += [(x, m), (m, y)]
                else:
                    nxt.append((x, y))
            pieces = nxt
        out += [y for _, y in pieces]
    return tuple(out)


def refine(partition: StrongPartition, target: Hyp) -> StrongPartition:
    """Extend ``partition`` until its diameter is below ``target`` (``<=``).

    Projection gaps wider than the target are bisected; the new projection
    values falling inside each original step are lifted back with
    :func:`gen_strong`, so every original point is kept.
    """
    if not strict_less(Hyp(0, 0), target):
        raise ValueError("refinement target must be strictly positive")
    if partial_leq(diameter(partition), target):
        return partition
    pts = partition.points
    new = [pts[0]]
    for p, q in zip(pts, pts[1:]):
        xs = _dedupe(_bisect_until(_dedupe((p.a1, q.a1)), target.a1))
        ys = _dedupe(_bisect_until(_dedupe((p.a2, q.a2)), target.a2))
        local = gen_strong(RealPartition(xs), RealPartition(ys), "diagonal")
        new.extend(local.points[1:])
    return StrongPartition(tuple(new))
