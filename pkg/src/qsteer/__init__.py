"""Simulation and verification of chaotic steering in high-dimensional bipartite states."""

from . import formulas
from ._backend import name as backend
from .linalg import DENSE_CAP, Ket, SymmetricMatrix, Vector, accumulate_outer, inner, sym_eigen, trace_norm
from .states import (
    BipartiteState,
    StructuredKet,
    alpha_tilde,
    alpha_tilde_edge,
    c_minus,
    c_prime,
    expand_in_b_minus,
    omega,
    omega_minus_form,
    phi,
    phi_edge,
    phi_tilde,
    structured_inner,
)
from .steering import Measurement, Outcome, build_m_plus, measure_complete, project_alpha, steer_structured
from .verify import convergence_scan, density_of_set, erratum_report, trace_distance_numeric, verify_all

__version__ = "0.1.0"
