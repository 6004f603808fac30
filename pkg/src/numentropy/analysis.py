"""Entropy bookkeeping, weighted-mean bounds and trend verdicts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fock
from .errors import DegenerateWeightsError, DomainError, ShapeError

DEFAULT_TOLERANCE = 1e-9
BOUNDS_SLACK = 1e-12


class VerdictKind(str, enum.Enum):
    INCREASED = "Increased"
    DECREASED = "Decreased"
    FLAT = "Flat"


class Trend(str, enum.Enum):
    NON_INCREASING = "NonIncreasing"
    NON_DECREASING = "NonDecreasing"
    MIXED = "Mixed"
    FLAT = "Flat"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    s_initial: float
    s_final: float
    tolerance: float

    @classmethod
    def compare(cls, s_initial: float, s_final: float, tolerance: float = DEFAULT_TOLERANCE) -> "Verdict":
        delta = s_final - s_initial
        if delta > tolerance:
            kind = VerdictKind.INCREASED
        elif -delta > tolerance:
            kind = VerdictKind.DECREASED
        else:
            kind = VerdictKind.FLAT
        return cls(kind, s_initial, s_final, tolerance)

    def scaled(self, copies: int) -> "Verdict":
        """Totals for ``copies`` independent identical systems."""
        return Verdict(self.kind, copies * self.s_initial, copies * self.s_final, copies * self.tolerance)


def _validated(values: Sequence[float], weights: Sequence[float]) -> tuple:
    a = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    if a.ndim != 1 or a.shape != w.shape or a.size == 0:
        raise ShapeError(f"values and weights must be equal nonempty 1-d sequences, got {a.shape} and {w.shape}")
    if np.any(w < 0):
        raise DomainError("weights must be nonnegative")
    if not w.sum() > 0:
        raise DegenerateWeightsError("weights sum to zero")
    return a, w


def weighted_mean(values: Sequence[float], weights: Sequence[float]) -> float:
    a, w = _validated(values, weights)
    if np.all(a == a[0]):
        return float(a[0])
    return math.fsum(w * a) / math.fsum(w)


def mean_bounds_check(values: Sequence[float], weights: Sequence[float]) -> bool:
    """min(values) <= weighted mean <= max(values), with 1e-12 slack."""
    a, _ = _validated(values, weights)
    m = weighted_mean(values, weights)
    return bool(a.min() - BOUNDS_SLACK <= m <= a.max() + BOUNDS_SLACK)


def jensen_bound(rho: fock.DensityMatrix) -> tuple:
    """Return (S, ln(<N> + 1/2)); concavity of ln guarantees S <= bound."""
    entropy = fock.expectation(rho, fock.entropy_operator(rho.space))
    n = fock.expectation(rho, fock.number_operator(rho.space))
    return entropy, math.log(n + 0.5)


def monotonicity_verdict(series: Sequence[float], tolerance: float = DEFAULT_TOLERANCE) -> Trend:
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise ShapeError("need at least two samples to judge a trend")
    if tolerance < 0:
        raise DomainError("tolerance must be nonnegative")
    deltas = np.diff(x)
    up = deltas > tolerance
    down = deltas < -tolerance
    if not up.any() and not down.any():
        return Trend.FLAT
    if not up.any():
        return Trend.NON_INCREASING
    if not down.any():
        return Trend.NON_DECREASING
    return Trend.MIXED


def endpoint_verdict(trajectory, tolerance: float = DEFAULT_TOLERANCE) -> Verdict:
    """Compare the first and last entropy samples of a trajectory (per copy)."""
    s = trajectory.entropy
    return Verdict.compare(float(s[0]), float(s[-1]), tolerance)


def von_neumann_entropy(rho: fock.DensityMatrix) -> float:
    lam = np.linalg.eigvalsh(np.asarray(rho.entries))
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam))) + 0.0
