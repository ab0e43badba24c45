"""State families of the steering construction, dense and structured.

Every single-system state used here has the shape

    head |0> + spike |i> + tail * sum_{k >= 1, k != i} |k>

so it is stored in O(1) as a :class:`StructuredKet` and evaluated at any
dimension. Dense :class:`~qsteer.linalg.Ket` forms are produced on demand
for n up to the dense cap and serve as the brute-force reference.

States on the measured side (``alpha``) are expressed in the
{|alpha_k+>} basis; their head slot is the |alpha_0+> amplitude.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import DegenerateDimension, DimensionError, IndexOutOfRange, NormalizationError
from .linalg import Ket, check_dense_cap

PLUS = "+"
MINUS = "-"


def _sign(sign) -> int:
    if sign in (PLUS, "plus", 1, +1.0):
        return 1
    if sign in (MINUS, "minus", -1, -1.0):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def check_n(n, minimum: int = 3) -> int:
    n = operator.index(n)
    if n < minimum:
        raise DegenerateDimension(f"degenerate dimension: n must be ≥ {minimum}, got {n}")
    return n


def check_index(n: int, i) -> int:
    i = operator.index(i)
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"index out of range: i={i} not in 1..{n - 1}")
    return i


def _norm_sq(n, head, spike_index, spike, tail) -> float:
    if spike_index is None:
        return head * head + float(n - 1) * (tail * tail)
    return head * head + spike * spike + float(n - 2) * (tail * tail)


@dataclass(frozen=True)
class StructuredKet:
    """Unit vector ``head|0> + spike|spike_index> + tail * (rest of 1..n-1)``."""

    dim: int
    head: float
    tail: float
    spike_index: int | None = None
    spike: float = 0.0

    def __post_init__(self):
        n = operator.index(self.dim)
        if n < 2:
            raise DimensionError(f"dimension must be >= 2, got {n}")
        object.__setattr__(self, "dim", n)
        if self.spike_index is None:
            object.__setattr__(self, "spike", 0.0)
        else:
            check_index(n, self.spike_index)
        sq = self.norm_sq()
        if abs(sq - 1.0) > linalg.NORM_TOL:
            raise NormalizationError(f"structured ket is not normalized: squared norm {sq!r}")

    def norm_sq(self) -> float:
        return _norm_sq(self.dim, self.head, self.spike_index, self.spike, self.tail)

    def amplitude(self, k: int) -> float:
        if k == 0:
            return self.head
        if k == self.spike_index:
            return self.spike
        if 1 <= k < self.dim:
            return self.tail
        raise IndexOutOfRange(f"index out of range: {k}")

    def component_sum(self) -> float:
        """Sum of the amplitudes on indices 1..n-1."""
        if self.spike_index is None:
            return float(self.dim - 1) * self.tail
        return self.spike + float(self.dim - 2) * self.tail

    def to_dense(self, dense_cap: int | None = None) -> Ket:
        check_dense_cap(self.dim, dense_cap)
        amps = np.full(self.dim, self.tail)
        amps[0] = self.head
        if self.spike_index is not None:
            amps[self.spike_index] = self.spike
        return Ket(amps)

    def __neg__(self):
        return StructuredKet(self.dim, -self.head, -self.tail, self.spike_index, -self.spike)


def structured_inner(x: StructuredKet, y: StructuredKet) -> float:
    """Closed-form <x|y> in O(1), for any dimension."""
    if x.dim != y.dim:
        raise DimensionError(f"incompatible dimensions: {x.dim} vs {y.dim}")
    n = x.dim
    total = x.head * y.head
    tt = x.tail * y.tail
    if x.spike_index is None and y.spike_index is None:
        return total + float(n - 1) * tt
    if y.spike_index is None:
        return total + x.spike * y.tail + float(n - 2) * tt
    if x.spike_index is None:
        return total + x.tail * y.spike + float(n - 2) * tt
    if x.spike_index == y.spike_index:
        return total + x.spike * y.spike + float(n - 2) * tt
    return total + x.spike * y.tail + x.tail * y.spike + float(n - 3) * tt


def basis_state(n: int, k: int) -> StructuredKet:
    """Computational basis vector |k> (|alpha_k+> on the measured side)."""
    n = check_n(n, 2)
    k = operator.index(k)
    if k == 0:
        return StructuredKet(n, 1.0, 0.0)
    check_index(n, k)
    return StructuredKet(n, 0.0, 0.0, k, 1.0)


def phi(n: int, i: int, sign) -> StructuredKet:
    """(|0> ± |i>)/sqrt(2)."""
    n = check_n(n)
    i = check_index(n, i)
    r = math.sqrt(0.5)
    return StructuredKet(n, r, 0.0, i, _sign(sign) * r)


def phi_edge(n: int, sign) -> StructuredKet:
    """(|0> ∓ sum_{k>=1} |k>)/sqrt(n): the '+' member carries the minus tail."""
    n = check_n(n)
    r = 1.0 / math.sqrt(n)
    return StructuredKet(n, r, -_sign(sign) * r)


def b_basis(n: int, sign) -> list[StructuredKet]:
    """The nonorthogonal basis {phi_1±, ..., phi_(n-1)±, phi_n±}."""
    return [phi(n, i, sign) for i in range(1, n)] + [phi_edge(n, sign)]


def c_minus(n: int) -> float:
    """Normaliser 1/sqrt(1 - 4/n^2) of the alpha-tilde family."""
    n = check_n(n)
    return 1.0 / math.sqrt((n * n - 4) / (n * n))


def alpha_tilde(n: int, i: int) -> StructuredKet:
    n = check_n(n)
    i = check_index(n, i)
    c = c_minus(n)
    return StructuredKet(n, 0.0, c * (2 / n), i, -c * ((n - 2) / n))


def alpha_tilde_edge(n: int) -> StructuredKet:
    n = check_n(n)
    return StructuredKet(n, 0.0, 1.0 / math.sqrt(n - 1))


def project_omega(a: StructuredKet):
    """Unnormalised (<a| ⊗ I)|Omega> in closed form.

    Returns ``(head, spike_index, spike, tail, norm_sq)`` of the beta-side
    vector. Only the components of ``a`` on 1..n-1 contribute since Omega
    has no |alpha_0+> term.
    """
    n = check_n(a.dim)
    r = 1.0 / math.sqrt(2 * (n - 1))
    head = a.component_sum() * r
    spike = a.spike * r
    tail = a.tail * r
    return head, a.spike_index, spike, tail, _norm_sq(n, head, a.spike_index, spike, tail)


def phi_tilde(n: int, i: int) -> StructuredKet:
    """Collapsed beta state after projecting alpha onto alpha_tilde(n, i)."""
    n = check_n(n)
    i = check_index(n, i)
    head, idx, spike, tail, sq = project_omega(alpha_tilde(n, i))
    norm = math.sqrt(sq)
    return StructuredKet(n, head / norm, tail / norm, idx, spike / norm)


def c_prime(n: int, variant: str = "derived") -> float:
    """Normaliser of the collapsed state phi_tilde.

    ``"paper"`` is the printed constant sqrt(n(n-1)(n+2)/(n^2+2));
    ``"derived"`` is sqrt((n-1)(n+2)/n), the reciprocal norm of the
    projected vector. They differ by the factor sqrt(n^2/(n^2+2)).
    """
    n = check_n(n)
    if variant == "paper":
        return math.sqrt(n * (n - 1) * (n + 2) / (n * n + 2))
    if variant == "derived":
        return math.sqrt((n - 1) * (n + 2) / n)
    raise ValueError(f"variant must be 'paper' or 'derived', got {variant!r}")


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients of phi_i+ over the minus basis."""

    diag: float
    off: float
    edge: float


def expand_in_b_minus(n: int, i: int) -> ExpansionCoefficients:
    n = check_n(n)
    check_index(n, i)
    return ExpansionCoefficients(diag=(2 - n) / n, off=2 / n, edge=math.sqrt(2 / n))


expand_in_B_minus = expand_in_b_minus


def reconstruct_from_b_minus(n: int, i: int, dense_cap: int | None = None) -> np.ndarray:
    """diag*phi_i- + off*sum_{i'!=i} phi_i'- + edge*phi_n-, densely."""
    coef = expand_in_b_minus(n, i)
    check_dense_cap(n, dense_cap)
    out = coef.edge * phi_edge(n, MINUS).to_dense().amplitudes
    for k in range(1, n):
        w = coef.diag if k == i else coef.off
        out = out + w * phi(n, k, MINUS).to_dense().amplitudes
    return out


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Pure state sum_{a,b} C[a, b] |a>_alpha |b>_beta."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.float64)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise DimensionError(f"incompatible dimensions: coefficient shape {c.shape}")
        fro = float(np.sqrt(np.sum(c * c)))
        if abs(fro - 1.0) > linalg.NORM_TOL:
            raise NormalizationError(f"bipartite state is not normalized: norm {fro!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[0]

    def frobenius_norm(self) -> float:
        return float(np.sqrt(np.sum(self.coefficients ** 2)))

    def reduced_beta(self) -> linalg.SymmetricMatrix:
        """Partial trace over alpha: C^T C."""
        c = self.coefficients
        return linalg.SymmetricMatrix(c.T @ c)


def omega(n: int, dense_cap: int | None = None) -> BipartiteState:
    """(1/sqrt(n-1)) sum_i |alpha_i+> |phi_i+>."""
    n = check_n(n)
    check_dense_cap(n, dense_cap)
    c = np.zeros((n, n))
    scale = 1.0 / math.sqrt(n - 1)
    for i in range(1, n):
        c[i] = scale * phi(n, i, PLUS).to_dense().amplitudes
    return BipartiteState(c)


def omega_minus_form(n: int, dense_cap: int | None = None) -> BipartiteState:
    """The same state rebuilt from the alpha_tilde / minus-basis expansion."""
    n = check_n(n)
    check_dense_cap(n, dense_cap)
    c = np.zeros((n, n))
    w = 1.0 / (c_minus(n) * math.sqrt(n - 1))
    for i in range(1, n):
        c += w * np.outer(alpha_tilde(n, i).to_dense().amplitudes, phi(n, i, MINUS).to_dense().amplitudes)
    c += math.sqrt(2 / n) * np.outer(
        alpha_tilde_edge(n).to_dense().amplitudes, phi_edge(n, MINUS).to_dense().amplitudes
    )
    return BipartiteState(c)
