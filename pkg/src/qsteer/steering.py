"""Projective measurement and collapse on bipartite states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import DimensionError, ImpossibleOutcome, InvalidMeasurement
from .linalg import Ket, Vector, check_dense_cap
from .states import BipartiteState, StructuredKet, check_n, project_omega, structured_inner

IMPOSSIBLE_DENSE = 1e-15
IMPOSSIBLE_STRUCTURED = 1e-30
ORTHONORMAL_TOL = 1e-10


@dataclass(frozen=True)
class Outcome:
    probability: float
    collapsed: Ket | StructuredKet | None


@dataclass(frozen=True, eq=False)
class Measurement:
    """Complete projective measurement given by an orthonormal basis and labels."""

    basis: tuple
    labels: tuple

    def __post_init__(self):
        basis = tuple(self.basis)
        labels = tuple(self.labels) if self.labels is not None else tuple(range(len(basis)))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "labels", labels)
        if not basis:
            raise InvalidMeasurement("invalid measurement: empty basis")
        n = basis[0].dim
        if len(basis) != n or any(b.dim != n for b in basis) or len(labels) != n:
            raise InvalidMeasurement(
                f"invalid measurement: need {n} basis vectors and labels of dimension {n}"
            )
        mat = np.array([b.amplitudes for b in basis])
        defect = float(np.max(np.abs(mat @ mat.T - np.eye(n))))
        if defect > ORTHONORMAL_TOL:
            raise InvalidMeasurement(f"invalid measurement: orthonormality defect {defect:.3e}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def orthonormality_defect(self) -> float:
        mat = np.array([b.amplitudes for b in self.basis])
        return float(np.max(np.abs(mat @ mat.T - np.eye(self.dim))))


def project_alpha(psi: BipartiteState, a: Vector) -> Outcome:
    """Project the alpha side onto ``a``; return the beta-side outcome."""
    if psi.dim != a.dim:
        raise DimensionError(f"incompatible dimensions: {psi.dim} vs {a.dim}")
    v = a.amplitudes @ psi.coefficients
    p = float(np.dot(v, v))
    if p < IMPOSSIBLE_DENSE:
        raise ImpossibleOutcome(f"impossible outcome: probability {p:.3e}")
    return Outcome(p, Ket(v / math.sqrt(p)))


def measure_complete(psi: BipartiteState, m: Measurement) -> list[Outcome]:
    if psi.dim != m.dim:
        raise DimensionError(f"incompatible dimensions: {psi.dim} vs {m.dim}")
    outcomes = []
    for b in m.basis:
        v = b.amplitudes @ psi.coefficients
        p = float(np.dot(v, v))
        if p < IMPOSSIBLE_DENSE:
            outcomes.append(Outcome(p, None))
        else:
            outcomes.append(Outcome(p, Ket(v / math.sqrt(p))))
    return outcomes


def build_m_plus(n: int, dense_cap: int | None = None) -> Measurement:
    n = check_n(n)
    check_dense_cap(n, dense_cap)
    return Measurement(tuple(Ket.basis(n, k) for k in range(n)), tuple(range(n)))


def steer_structured(n: int, a: StructuredKet) -> Outcome:
    """Closed-form project_alpha(omega(n), a) for any n."""
    n = check_n(n)
    if a.dim != n:
        raise DimensionError(f"incompatible dimensions: {n} vs {a.dim}")
    head, idx, spike, tail, p = project_omega(a)
    if p < IMPOSSIBLE_STRUCTURED:
        raise ImpossibleOutcome(f"impossible outcome: probability {p:.3e}")
    norm = math.sqrt(p)
    return Outcome(p, StructuredKet(n, head / norm, tail / norm, idx, spike / norm))


def collapse_overlap(first: Outcome, second: Outcome) -> float:
    """Overlap of two collapsed states (dense or structured, not mixed)."""
    x, y = first.collapsed, second.collapsed
    if isinstance(x, StructuredKet):
        return structured_inner(x, y)
    return linalg.inner(x, y)
