"""Bounded variation of hyperbolic-valued functions over strong partitions.

For a separable ``F`` the set of variation sums over all strong partitions
splits into the real variation sums of the two components, so the total
variation is computed one real function at a time.  A brute-force oracle
over monotone lattice paths of a finite grid handles arbitrary
(two-argument) component functions and checks that reduction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, GridTooLarge, JumpOutsideDomain
from .funcspace import Expr, SeparableFn, _vectorize, compile_expr, contains_abs, differentiate, evaluate
from .hypnum import Hyp, hyp_to_json, scalar_to_json
from .interval import HypInterval
from .partition import RealPartition, StrongPartition, gen_strong, union_area

__all__ = [
    "VariationReport",
    "LineSet",
    "variation_sum",
    "real_variation_sum",
    "real_total_variation",
    "total_variation_separable",
    "total_variation_bruteforce",
    "monotone_paths",
    "discontinuity_lines",
    "one_sided_gap",
]

GRID_LIMIT = 400
UNBOUNDED_CAP = 1e12
CRITICAL_SAMPLES = 1024
ROOT_TOL = 1e-12
SWEEP_TOL = 1e-10
SWEEP_MAX_DOUBLINGS = 22

PairFn = tuple  # (f1(x1, x2), f2(x1, x2))


@dataclass(frozen=True)
class VariationReport:
    """Outcome of a total-variation computation.

    ``witness`` reproduces ``value.a1`` under :func:`variation_sum` and
    ``witness_e2`` reproduces ``value.a2`` (they are the same chain unless
    the components were maximised on different paths).  ``unbounded`` is the
    verdict that a component estimate passed the cap.
    """

    value: Hyp
    exact: bool
    partitions_examined: int
    witness: StrongPartition
    witness_e2: Optional[StrongPartition] = None
    unbounded: bool = False

    def __post_init__(self):
        if self.witness_e2 is None:
            object.__setattr__(self, "witness_e2", self.witness)

    def to_json(self) -> dict:
        out = {
            "value": hyp_to_json(self.value),
            "exact": self.exact,
            "unbounded": self.unbounded,
            "partitions_examined": self.partitions_examined,
            "witness": self.witness.to_json(),
        }
        if self.witness_e2 != self.witness:
            out["witness_e2"] = self.witness_e2.to_json()
        return out


# --- variation sums -----------------------------------------------------------

def _pair_components(F) -> tuple:
    if isinstance(F, SeparableFn):
        return F.general()
    return tuple(F)


def variation_sum(F: Union[SeparableFn, PairFn], partition: StrongPartition) -> Hyp:
    """``sum_j |F(rho_{j+1}) - F(rho_j)|_k`` along the chain."""
    x1 = np.array([float(p.a1) for p in partition.points])
    x2 = np.array([float(p.a2) for p in partition.points])
    if isinstance(F, SeparableFn):
        v1 = F.component(1)(x1)
        v2 = F.component(2)(x2)
    else:
        f1, f2 = F
        v1 = np.array([f1(a, b) for a, b in zip(x1, x2)], dtype=float)
        v2 = np.array([f2(a, b) for a, b in zip(x1, x2)], dtype=float)
    return Hyp(float(np.abs(np.diff(v1)).sum()), float(np.abs(np.diff(v2)).sum()))


def real_variation_sum(f: Callable, points: Sequence[float]) -> float:
    values = f(np.asarray(points, dtype=float))
    return float(np.abs(np.diff(values)).sum())


# --- real total variation -------------------------------------------------------

def _critical_points(node: Expr, a: float, b: float) -> Optional[list]:
    """Sign changes of the derivative on [a, b], refined by bisection.

    Returns ``None`` when the derivative cannot be evaluated on the sample
    grid (domain trouble), in which case the caller falls back to sweeping.
    """
    d = differentiate(node)
    df = compile_expr(d)
    xs = np.linspace(a, b, CRITICAL_SAMPLES)
    try:
        with np.errstate(all="ignore"):
            ds = np.asarray(df(xs), dtype=float)
    except DomainError:
        return None
    if not np.all(np.isfinite(ds)):
        return None
    signs = np.sign(ds)
    roots = []
    last = 0.0
    last_x = a
    for x, sg in zip(xs, signs):
        if sg == 0:
            continue
        if last != 0 and sg != last:
            lo, hi = last_x, float(x)
            flo = last
            while hi - lo > ROOT_TOL:
                mid = 0.5 * (lo + hi)
                fm = np.sign(evaluate(d, mid))
                if fm == 0:
                    lo = hi = mid
                    break
                if fm == flo:
                    lo = mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        last, last_x = sg, float(x)
    return roots


def real_total_variation(component, a: float, b: float, jumps: Sequence[float] = (),
                         cap: float = UNBOUNDED_CAP) -> tuple:
    """Total variation of a real function on ``[a, b]``.

    Returns ``(value, exact, points, partitions_examined, unbounded)``.
    Differentiable expressions without declared jumps are split at the
    critical points of their derivative, which is exact; everything else is
    estimated by doubling a uniform grid until successive sums agree.
    """
    if a == b:
        return 0.0, True, [a], 1, False
    a, b = float(a), float(b)
    if isinstance(component, Expr) and not contains_abs(component) and not jumps:
        roots = _critical_points(component, a, b)
        if roots is not None:
            pts = [a] + [r for r in roots if a < r < b] + [b]
            f = lambda x: evaluate(component, x)
            value = real_variation_sum(f, pts)
            return value, True, pts, 1, value > cap
    f = (lambda x: evaluate(component, x)) if isinstance(component, Expr) else _vectorize(component)
    n = 1
    pts = np.array([a, b])
    prev = real_variation_sum(f, pts)
    examined = 1
    for _ in range(SWEEP_MAX_DOUBLINGS):
        n *= 2
        pts = np.linspace(a, b, n + 1)
        cur = real_variation_sum(f, pts)
        examined += 1
        if cur > cap:
            return cur, False, list(pts), examined, True
        if abs(cur - prev) < SWEEP_TOL:
            break
        prev = cur
    return cur, False, list(pts), examined, False


def total_variation_separable(F: SeparableFn, interval: HypInterval,
                              cap: float = UNBOUNDED_CAP) -> VariationReport:
    v1, ex1, p1, n1, u1 = real_total_variation(F.f1, interval.lo.a1, interval.hi.a1, F.jumps1, cap)
    v2, ex2, p2, n2, u2 = real_total_variation(F.f2, interval.lo.a2, interval.hi.a2, F.jumps2, cap)
    p1 = _anchor(p1, interval.lo.a1, interval.hi.a1)
    p2 = _anchor(p2, interval.lo.a2, interval.hi.a2)
    witness = gen_strong(RealPartition(p1), RealPartition(p2), "e1_first")
    return VariationReport(Hyp(v1, v2), ex1 and ex2, n1 + n2, witness, unbounded=u1 or u2)


def _anchor(points, a, b) -> tuple:
    # keep the caller's exact endpoints so the witness spans the interval itself
    inner = [float(p) for p in points[1:-1]]
    return (a,) + tuple(inner) + ((b,) if b != a else ())


# --- brute-force oracle over a grid -----------------------------------------------

def monotone_paths(m: int, n: int):
    """Every maximal monotone lattice path from (0, 0) to (m-1, n-1)."""
    steps = m + n - 2
    for ups in combinations(range(steps), n - 1):
        ups = set(ups)
        i = j = 0
        path = [(0, 0)]
        for k in range(steps):
            if k in ups:
                j += 1
            else:
                i += 1
            path.append((i, j))
        yield path


def _best_path(values: np.ndarray) -> tuple:
    """Maximum absolute-increment sum over monotone unit-step paths, by DP."""
    m, n = values.shape
    best = np.full((m, n), -np.inf)
    came = np.zeros((m, n), dtype=int)  # 0: from the left (i-1), 1: from below (j-1)
    best[0, 0] = 0.0
    for i in range(m):
        for j in range(n):
            if i == 0 and j == 0:
                continue
            cands = []
            if i > 0:
                cands.append((best[i - 1, j] + abs(values[i, j] - values[i - 1, j]), 0))
            if j > 0:
                cands.append((best[i, j - 1] + abs(values[i, j] - values[i, j - 1]), 1))
            best[i, j], came[i, j] = max(cands, key=lambda c: c[0])
    path = [(m - 1, n - 1)]
    i, j = m - 1, n - 1
    while (i, j) != (0, 0):
        if came[i, j] == 0:
            i -= 1
        else:
            j -= 1
        path.append((i, j))
    return float(best[m - 1, n - 1]), path[::-1]


def total_variation_bruteforce(F: Union[SeparableFn, PairFn], xs: Sequence, ys: Sequence) -> VariationReport:
    """Maximise the variation sum over all chains drawn from the grid ``xs x ys``.

    Inserting a point never lowers an absolute-increment sum, so only maximal
    paths (unit steps) need to be considered; their maximum is found for each
    component separately by dynamic programming over the grid.
    """
    xs, ys = list(xs), list(ys)
    m, n = len(xs), len(ys)
    if m * n > GRID_LIMIT:
        raise GridTooLarge(f"{m}x{n} grid exceeds {GRID_LIMIT} points")
    f1, f2 = _pair_components(F)
    v1 = np.array([[f1(float(x), float(y)) for y in ys] for x in xs], dtype=float)
    v2 = np.array([[f2(float(x), float(y)) for y in ys] for x in xs], dtype=float)
    best1, path1 = _best_path(v1)
    best2, path2 = _best_path(v2)
    w1 = StrongPartition(tuple(Hyp(xs[i], ys[j]) for i, j in path1))
    w2 = StrongPartition(tuple(Hyp(xs[i], ys[j]) for i, j in path2))
    return VariationReport(Hyp(best1, best2), False, math.comb(m + n - 2, m - 1), w1, w2)


# --- discontinuity lines ------------------------------------------------------------

@dataclass(frozen=True)
class LineSet:
    """Vertical segments ``{x}e1 + [a2, b2]e2`` and horizontal ``[a1, b1]e1 + {y}e2``."""

    interval: HypInterval
    vertical: tuple = ()
    horizontal: tuple = ()

    def segments(self) -> list:
        I = self.interval
        out = [HypInterval(Hyp(x, I.lo.a2), Hyp(x, I.hi.a2)) for x in self.vertical]
        out += [HypInterval(Hyp(I.lo.a1, y), Hyp(I.hi.a1, y)) for y in self.horizontal]
        return out

    def __contains__(self, xi: Hyp) -> bool:
        if not self.interval.contains(xi):
            return False
        return xi.a1 in self.vertical or xi.a2 in self.horizontal

    def __len__(self):
        return len(self.vertical) + len(self.horizontal)

    def planar_area(self):
        """Euclidean area of the union; zero for any finite set of segments."""
        return union_area(self.segments())

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "vertical": [scalar_to_json(x) for x in self.vertical],
            "horizontal": [scalar_to_json(y) for y in self.horizontal],
        }


def discontinuity_lines(F: SeparableFn, interval: HypInterval) -> LineSet:
    """Lines through the declared jumps of each component, clipped to ``interval``."""
    a1, b1 = interval.e1
    a2, b2 = interval.e2
    for x in F.jumps1:
        if not a1 <= x <= b1:
            raise JumpOutsideDomain(f"e1 jump {x!r} outside [{a1}, {b1}]")
    for y in F.jumps2:
        if not a2 <= y <= b2:
            raise JumpOutsideDomain(f"e2 jump {y!r} outside [{a2}, {b2}]")
    return LineSet(interval, tuple(dict.fromkeys(F.jumps1)), tuple(dict.fromkeys(F.jumps2)))


def one_sided_gap(f: Callable, x: float, eps: float = 1e-9) -> float:
    """Largest deviation among ``f(x - eps)``, ``f(x)``, ``f(x + eps)``."""
    vals = [float(f(x - eps)), float(f(x)), float(f(x + eps))]
    return max(vals) - min(vals)
