"""Dense real linear algebra: kets, symmetric matrices, Jacobi eigensolver.

The hot loops (dot product, rank-1 update, Jacobi sweeps) live in
:mod:`qsteer._backend`, which picks the compiled extension if present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .exceptions import ConvergenceError, DenseCapExceeded, DimensionError, NormalizationError

DENSE_CAP = 4096
NORM_TOL = 1e-12
EIGEN_TOL = 1e-13
MAX_SWEEPS = 100


def check_dense_cap(n: int, cap: int | None = None) -> None:
    cap = DENSE_CAP if cap is None else cap
    if n > cap:
        raise DenseCapExceeded(
            f"n={n} exceeds the dense cap {cap}; use the structured path"
        )


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, order="C")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Vector:
    """Unnormalized real vector (intermediate results)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.amplitudes)
        if arr.ndim != 1:
            raise DimensionError("incompatible dimensions: expected a 1-d array")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return math.sqrt(_backend.kernels.dot(self.amplitudes, self.amplitudes))

    def normalized(self) -> Ket:
        return Ket(self.amplitudes / self.norm())

    def __neg__(self):
        return type(self)(-self.amplitudes)

    def __len__(self):
        return self.dim


@dataclass(frozen=True, eq=False)
class Ket(Vector):
    """Unit-norm state vector of dimension >= 2."""

    def __post_init__(self):
        super().__post_init__()
        if self.dim < 2:
            raise DimensionError(f"ket dimension must be >= 2, got {self.dim}")
        sq = _backend.kernels.dot(self.amplitudes, self.amplitudes)
        if abs(sq - 1.0) > NORM_TOL:
            raise NormalizationError(f"ket is not normalized: squared norm {sq!r}")

    @classmethod
    def basis(cls, n: int, k: int) -> Ket:
        amps = np.zeros(n)
        amps[k] = 1.0
        return cls(amps)


def inner(x: Vector, y: Vector) -> float:
    if x.dim != y.dim:
        raise DimensionError(f"incompatible dimensions: {x.dim} vs {y.dim}")
    return _backend.kernels.dot(x.amplitudes, y.amplitudes)


def distance_mod_sign(x: Vector, y: Vector) -> float:
    """1 - |<x|y>|: zero iff two unit vectors agree up to global sign."""
    return 1.0 - abs(inner(x, y))


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Real symmetric matrix. Only the upper triangle of the input is read."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"incompatible dimensions: shape {arr.shape} is not square")
        upper = np.triu(arr)
        object.__setattr__(self, "entries", _frozen(upper + np.triu(arr, 1).T))

    @classmethod
    def from_array(cls, arr, atol: float = 1e-12) -> SymmetricMatrix:
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
            asym = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
            if asym > atol:
                raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
        return cls(arr)

    @classmethod
    def zeros(cls, n: int) -> SymmetricMatrix:
        return cls(np.zeros((n, n)))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionError(f"incompatible dimensions: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return SymmetricMatrix(self.entries + other.entries)

    def __sub__(self, other):
        self._check(other)
        return SymmetricMatrix(self.entries - other.entries)

    def __mul__(self, scalar):
        return SymmetricMatrix(self.entries * float(scalar))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    vectors: np.ndarray  # columns, matching eigenvalues
    sweeps: int = 0
    residual: float = 0.0

    @property
    def eigenvectors(self) -> tuple[Ket, ...]:
        return tuple(Vector(self.vectors[:, k]).normalized() for k in range(self.vectors.shape[1]))

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.eigenvalues) @ self.vectors.T


def sym_eigen(a: SymmetricMatrix, dense_cap: int | None = None) -> EigenDecomposition:
    """Full spectral decomposition by cyclic Jacobi rotations.

    Eigenvalues come back in descending order, exact ties keeping their
    original diagonal position. Convergence means the off-diagonal Frobenius
    norm drops below ``EIGEN_TOL * max(1, ||A||_F)``.
    """
    check_dense_cap(a.dim, dense_cap)
    scale = max(1.0, float(np.linalg.norm(a.entries)))
    w, v, sweeps, off, converged = _backend.kernels.jacobi_eigh(
        a.entries, EIGEN_TOL * scale, MAX_SWEEPS
    )
    if not converged:
        raise ConvergenceError("eigensolver did not converge", off)
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(
        eigenvalues=_frozen(w[order]),
        vectors=_frozen(v[:, order]),
        sweeps=int(sweeps),
        residual=float(off),
    )


def trace_norm(a: SymmetricMatrix, dense_cap: int | None = None) -> float:
    """tr sqrt(A^T A), which for symmetric A is the sum of |eigenvalues|."""
    return float(np.sum(np.abs(sym_eigen(a, dense_cap).eigenvalues)))


def accumulate_outer(acc: SymmetricMatrix, x: Vector, weight: float) -> SymmetricMatrix:
    if weight < 0:
        raise ValueError(f"weight must be non-negative, got {weight}")
    if acc.dim != x.dim:
        raise DimensionError(f"incompatible dimensions: {acc.dim} vs {x.dim}")
    out = np.array(acc.entries, order="C")
    _backend.kernels.rank1_update(out, x.amplitudes, float(weight))
    return SymmetricMatrix(out)
