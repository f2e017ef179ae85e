"""Hyperbolic-valued analysis: partitions, bounded variation and Riemann-Stieltjes integrals."""
from .errors import *  # noqa: F401,F403
from .hypnum import E1, E2, K, ONE, ZERO, Hyp
from .interval import HypInterval
from .partition import IntervalCollection, RealPartition, StrongPartition
from .funcspace import SeparableFn, parse
from .variation import LineSet, VariationReport
from .rs import IntegralResult

__all__ = [
    "E1", "E2", "K", "ONE", "ZERO", "Hyp", "HypInterval", "IntervalCollection",
    "RealPartition", "StrongPartition", "SeparableFn", "parse", "LineSet",
    "VariationReport", "IntegralResult",
]

__version__ = "0.1.0"
