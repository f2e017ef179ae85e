"""Hyperbolic Riemann-Stieltjes sums and integrals.

The sum over a strong partition uses either the signed increments of the
integrator (``mode="signed"``, which is what reduces to two classical real
Riemann-Stieltjes sums) or their hyperbolic module (``mode="absolute"``).
The two agree whenever both integrator components are non-decreasing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import NoConvergence
from .funcspace import SeparableFn, holomorphic_derivative
from .hypnum import Hyp, hyp_to_json, k_module, strict_less
from .interval import HypInterval
from .partition import StrongPartition

__all__ = [
    "IntegralResult",
    "rs_sum",
    "rs_integral",
    "real_rs_integral",
    "rs_integral_components",
    "riemann_identity_integral",
    "integration_by_parts_sides",
    "verify_integration_by_parts",
]

Mode = Literal["signed", "absolute"]
Sample = Literal["left", "right", "midpoint", "mid", "random"]

MAX_HALVINGS = 24
PERTURBATION_DRAWS = 3


@dataclass
class IntegralResult:
    value: Hyp
    error_estimate: Hyp
    refinements: int
    trace: list = field(default_factory=list)  # (diameter, sum) per level
    converged: bool = True

    def to_json(self) -> dict:
        return {
            "value": hyp_to_json(self.value),
            "error_estimate": hyp_to_json(self.error_estimate),
            "refinements": self.refinements,
            "converged": self.converged,
            "trace": [{"diameter": hyp_to_json(d), "sum": hyp_to_json(s)} for d, s in self.trace],
        }


# --- sums -------------------------------------------------------------------------

def _increments(g, x: np.ndarray, mode: str) -> np.ndarray:
    dg = np.diff(g(x))
    if mode == "absolute":
        return np.abs(dg)
    if mode != "signed":
        raise ValueError(f"unknown mode {mode!r}")
    return dg


def _tags(x: np.ndarray, sample: str, rng=None) -> np.ndarray:
    left, right = x[:-1], x[1:]
    if sample == "left":
        return left
    if sample == "right":
        return right
    if sample in ("midpoint", "mid"):
        return 0.5 * (left + right)
    if sample == "random":
        return left + rng.random(len(left)) * (right - left)
    raise ValueError(f"unknown sample rule {sample!r}")


def _component_sum(f, x: np.ndarray, dg: np.ndarray, sample: str, rng=None) -> float:
    gamma = _tags(x, sample, rng)
    if len(gamma) == 0:
        return 0.0
    return float(np.sum(f(gamma) * dg))


class _Level:
    """Points and integrator increments of one partition, reused across tag rules."""

    def __init__(self, F, G, x1, x2, mode):
        self.f1, self.f2 = F.component(1), F.component(2)
        self.x1, self.x2 = x1, x2
        self.dg1 = _increments(G.component(1), x1, mode)
        self.dg2 = _increments(G.component(2), x2, mode)

    def sum(self, sample: str, rng=None) -> Hyp:
        return Hyp(_component_sum(self.f1, self.x1, self.dg1, sample, rng),
                   _component_sum(self.f2, self.x2, self.dg2, sample, rng))


def rs_sum(F: SeparableFn, G: SeparableFn, partition: StrongPartition,
           sample: Sample = "midpoint", mode: Mode = "signed", seed: int = 0) -> Hyp:
    """``sum_j F(gamma_j) * (G(rho_{j+1}) - G(rho_j))`` along the chain.

    ``gamma_j`` is picked in ``[rho_j, rho_{j+1}]_k`` by ``sample``; the
    ``random`` rule draws it from a generator seeded with ``seed``.
    """
    x1 = np.array([float(p.a1) for p in partition.points])
    x2 = np.array([float(p.a2) for p in partition.points])
    rng = np.random.default_rng(seed) if sample == "random" else None
    return _Level(F, G, x1, x2, mode).sum(sample, rng)


# --- the integral as a limit of sums -------------------------------------------------

def _level_points(interval: HypInterval, n: int) -> tuple:
    """Diagonal lift of the uniform n-piece partitions of both projections."""
    a1, b1 = (float(v) for v in interval.e1)
    a2, b2 = (float(v) for v in interval.e2)
    return np.linspace(a1, b1, n + 1), np.linspace(a2, b2, n + 1)


def _within(diff: Hyp, eps: Hyp) -> bool:
    return strict_less(k_module(diff), eps)


def rs_integral(F: SeparableFn, G: SeparableFn, interval: HypInterval, eps: Hyp,
                mode: Mode = "signed", sample: Sample = "midpoint",
                max_halvings: int = MAX_HALVINGS, seed: int = 0, strict: bool = False) -> IntegralResult:
    """Integral of ``F`` against ``G`` by halving the partition diameter.

    Starting from the trivial partition, both projections are bisected
    uniformly at every level.  The driver stops once two successive sums
    differ by less than ``eps`` (component-wise, strictly) and
    :data:`PERTURBATION_DRAWS` sums with randomly placed sample points stay
    within ``eps`` of the current one.  Without convergence the partial
    result is returned with ``converged=False`` (or :class:`NoConvergence`
    is raised when ``strict``).
    """
    if not strict_less(Hyp(0, 0), eps):
        raise ValueError("eps must be strictly positive")
    rng = np.random.default_rng(seed)
    lengths = interval.length
    trace = []
    prev = None
    diff = Hyp(math.inf, math.inf)
    for level in range(max_halvings + 1):
        n = 2 ** level
        x1, x2 = _level_points(interval, n)
        lev = _Level(F, G, x1, x2, mode)
        current = lev.sum(sample)
        trace.append((Hyp(float(lengths.a1) / n, float(lengths.a2) / n), current))
        if prev is not None:
            diff = k_module(current - prev)
            if _within(diff, eps) and all(
                _within(lev.sum("random", rng) - current, eps)
                for _ in range(PERTURBATION_DRAWS)
            ):
                return IntegralResult(current, diff, level, trace, True)
        prev = current
    result = IntegralResult(prev, diff, max_halvings, trace, False)
    if strict:
        raise NoConvergence(f"no convergence after {max_halvings} halvings", result)
    return result


# --- independent component-wise oracle -------------------------------------------------

def real_rs_integral(f, g, a: float, b: float, tol: float = 1e-10,
                     initial_panels: int = 16, max_depth: int = 50) -> float:
    """Classical real Riemann-Stieltjes integral by adaptive panel bisection.

    Each panel compares the one-panel trapezoidal Stieltjes sum
    ``(f(a) + f(b))/2 * (g(b) - g(a))`` with its two-panel refinement and is
    split until the difference is below its share of ``tol``; accepted panels
    contribute the Richardson-corrected value.
    """
    a, b = float(a), float(b)
    if a == b:
        return 0.0
    total_len = b - a
    edges = np.linspace(a, b, initial_panels + 1)
    fe, ge = f(edges), g(edges)
    lo, hi = edges[:-1], edges[1:]
    flo, fhi, glo, ghi = fe[:-1], fe[1:], ge[:-1], ge[1:]
    accepted = []
    for _ in range(max_depth):
        mid = 0.5 * (lo + hi)
        fm, gm = f(mid), g(mid)
        coarse = 0.5 * (flo + fhi) * (ghi - glo)
        fine = 0.5 * (flo + fm) * (gm - glo) + 0.5 * (fm + fhi) * (ghi - gm)
        err = np.abs(fine - coarse)
        ok = err <= 3.0 * tol * (hi - lo) / total_len
        accepted.extend((fine[ok] + (fine[ok] - coarse[ok]) / 3.0).tolist())
        keep = ~ok
        if not keep.any():
            return math.fsum(accepted)
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fm, fhi = flo[keep], fm[keep], fhi[keep]
        glo, gm, ghi = glo[keep], gm[keep], ghi[keep]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        flo, fhi = np.concatenate([flo, fm]), np.concatenate([fm, fhi])
        glo, ghi = np.concatenate([glo, gm]), np.concatenate([gm, ghi])
    raise NoConvergence(f"adaptive Stieltjes quadrature on [{a}, {b}] did not settle")


def rs_integral_components(F: SeparableFn, G: SeparableFn, interval: HypInterval,
                           eps_real: float = 1e-10) -> Hyp:
    """Two independent real integrals recombined as ``I1*e1 + I2*e2``."""
    a1, b1 = interval.e1
    a2, b2 = interval.e2
    return Hyp(
        real_rs_integral(F.component(1), G.component(1), a1, b1, eps_real),
        real_rs_integral(F.component(2), G.component(2), a2, b2, eps_real),
    )


def riemann_identity_integral(F: SeparableFn, interval: HypInterval, eps: Hyp, **kwargs) -> IntegralResult:
    """Integral against the identity, i.e. ``int F d_k xi``."""
    return rs_integral(F, SeparableFn.identity(), interval, eps, **kwargs)


def integration_by_parts_sides(F: SeparableFn, G: SeparableFn, interval: HypInterval, eps: Hyp,
                               mode: Mode = "signed", seed: int = 0) -> tuple:
    """``(int F dG, int F*G' dxi)`` as two :class:`IntegralResult` objects."""
    dG = holomorphic_derivative(G)
    lhs = rs_integral(F, G, interval, eps, mode=mode, seed=seed, strict=True)
    rhs = riemann_identity_integral(F * dG, interval, eps, mode=mode, seed=seed, strict=True)
    return lhs, rhs


def verify_integration_by_parts(F: SeparableFn, G: SeparableFn, interval: HypInterval,
                                eps: Hyp, mode: Mode = "signed") -> Hyp:
    """``|int F dG - int F*G' dxi|_k`` for an expression-backed, differentiable ``G``."""
    lhs, rhs = integration_by_parts_sides(F, G, interval, eps, mode)
    return k_module(lhs.value - rhs.value)
