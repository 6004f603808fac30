"""Single-mode Fock-space states and operators.

All operators live in the number basis |0>, ..., |d-1> and are static
(Schroedinger picture); time dependence is carried by the density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import DomainError, NormalizationError, RangeError, ShapeError

LadderKind = Literal["oscillator", "uniform"]

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-9
PSD_TOL = 1e-9
IMAG_TOL = 1e-10


def _frozen(matrix) -> np.ndarray:
    out = np.array(matrix, dtype=complex)
    out.setflags(write=False)
    return out


def hermiticity_defect(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0


@dataclass(frozen=True)
class FockSpace:
    """Truncated single-mode space.

    ``levels`` is the highest level that must be representable (the initial
    excitation), ``dim`` the number of basis states kept.
    """

    levels: int
    dim: int

    def __post_init__(self):
        if self.levels < 0:
            raise DomainError(f"levels must be nonnegative, got {self.levels}")
        if self.dim < 1:
            raise DomainError(f"dim must be positive, got {self.dim}")
        if self.dim < self.levels + 1:
            raise DomainError(
                f"dim={self.dim} cannot hold level {self.levels}; need dim >= levels + 1"
            )

    @classmethod
    def for_levels(cls, levels: int) -> "FockSpace":
        return cls(levels, levels + 1)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.dim)

    def identity(self) -> "ObservableOperator":
        return ObservableOperator(np.eye(self.dim), self)


def _check_square(entries: np.ndarray, space: FockSpace) -> None:
    if entries.shape != (space.dim, space.dim):
        raise ShapeError(f"expected {space.dim}x{space.dim} matrix, got shape {entries.shape}")


@dataclass(frozen=True)
class ObservableOperator:
    entries: np.ndarray
    space: FockSpace

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        _check_square(self.entries, self.space)
        defect = hermiticity_defect(self.entries)
        if defect > HERMITIAN_TOL:
            raise DomainError(f"observable is not Hermitian (defect {defect:.3e})")


@dataclass(frozen=True)
class LadderOperator:
    entries: np.ndarray
    space: FockSpace
    kind: LadderKind = "oscillator"

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        _check_square(self.entries, self.space)
        off = self.entries.copy()
        k = np.arange(1, self.space.dim)
        off[k - 1, k] = 0
        if np.any(off != 0):
            raise DomainError("ladder operator has entries outside the (k-1, k) band")

    @property
    def dagger(self) -> np.ndarray:
        return self.entries.conj().T


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace state.

    Pass ``check=False`` to skip the eigenvalue test when wrapping matrices
    already known to be valid.
    """

    entries: np.ndarray
    space: FockSpace
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        _check_square(self.entries, self.space)
        if not self.check:
            return
        defect = hermiticity_defect(self.entries)
        if defect > HERMITIAN_TOL:
            raise DomainError(f"density matrix is not Hermitian (defect {defect:.3e})")
        trace_err = abs(np.trace(self.entries) - 1.0)
        if trace_err > TRACE_TOL:
            raise NormalizationError(f"density matrix trace is off by {trace_err:.3e}")
        lam_min = float(np.linalg.eigvalsh(self.entries)[0])
        if lam_min < -PSD_TOL:
            raise DomainError(f"density matrix has negative eigenvalue {lam_min:.3e}")

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.entries))


def number_operator(space: FockSpace) -> ObservableOperator:
    return ObservableOperator(np.diag(space.indices.astype(float)), space)


def entropy_operator(space: FockSpace) -> ObservableOperator:
    """ln(N + 1/2), diagonal in the number basis."""
    return ObservableOperator(np.diag(np.log(space.indices + 0.5)), space)


def lowering_operator(space: FockSpace, kind: LadderKind = "oscillator") -> LadderOperator:
    """Single-quantum lowering operator with entries at (k-1, k).

    ``oscillator`` uses the harmonic-oscillator elements sqrt(k);
    ``uniform`` uses 1 for every transition.
    """
    k = np.arange(1, space.dim)
    if kind == "oscillator":
        elements = np.sqrt(k)
    elif kind == "uniform":
        elements = np.ones(k.size)
    else:
        raise DomainError(f"unknown ladder kind {kind!r}")
    a = np.zeros((space.dim, space.dim), dtype=complex)
    a[k - 1, k] = elements
    return LadderOperator(a, space, kind)


def fock_pure_density(space: FockSpace, level: int) -> DensityMatrix:
    if not 0 <= level < space.dim:
        raise RangeError(f"level {level} outside 0..{space.dim - 1}")
    rho = np.zeros((space.dim, space.dim), dtype=complex)
    rho[level, level] = 1.0
    return DensityMatrix(rho, space, check=False)


def density_from_populations(space: FockSpace, pops: Sequence[float]) -> DensityMatrix:
    """Diagonal state from level populations, zero-padded to ``space.dim``."""
    p = np.asarray(pops, dtype=float)
    if p.ndim != 1 or p.size == 0 or p.size > space.dim:
        raise ShapeError(f"need between 1 and {space.dim} populations, got {p.size}")
    if np.any(p < 0):
        raise DomainError("populations must be nonnegative")
    total = p.sum()
    if abs(total - 1.0) > TRACE_TOL:
        raise NormalizationError(f"populations sum to {total!r}, not 1")
    full = np.zeros(space.dim)
    full[: p.size] = p / total
    return DensityMatrix(np.diag(full).astype(complex), space, check=False)


def _trace_product(rho: DensityMatrix, op: ObservableOperator) -> complex:
    if rho.space.dim != op.space.dim:
        raise ShapeError(f"state dim {rho.space.dim} != operator dim {op.space.dim}")
    # Tr(AB) without forming the product
    return complex(np.sum(rho.entries * op.entries.T))


def expectation(rho: DensityMatrix, op: ObservableOperator) -> float:
    """Re Tr(rho op); raises if the imaginary part exceeds the diagnostic tolerance."""
    value = _trace_product(rho, op)
    if abs(value.imag) > IMAG_TOL:
        raise DomainError(f"expectation has imaginary part {value.imag:.3e}")
    return value.real


def purity(rho: DensityMatrix) -> float:
    m = rho.entries
    return float(np.real(np.sum(m * m.T)))
