"""Closed-form predictions as functions of the dimension n.

Arguments are Python ints; ratios of integer expressions are formed with
true division so they round once, keeping n up to ~1e18 accurate.
"""

import math

from .states import check_n


def alpha_pair_overlap(n):
    """<alpha~_i-|alpha~_i'-> for i != i'."""
    n = check_n(n)
    return -4 / ((n - 2) * (n + 2))


def alpha_edge_overlap(n):
    n = check_n(n)
    return math.sqrt((n - 2) / ((n - 1) * (n + 2)))


def alpha_closeness_sq(n):
    """|<alpha_i+|alpha~_i->|^2 = 1 - 4/(n+2)."""
    n = check_n(n)
    return (n - 2) / (n + 2)


def alpha_closeness(n):
    """Signed <alpha_i+|alpha~_i->; tends to -1."""
    return -math.sqrt(alpha_closeness_sq(n))


def phi_overlap(n, variant="derived"):
    """<phi_i-|phi~_i->.

    ``"derived"`` follows from the normalised collapse, sqrt(1 - 2/n).
    ``"paper"`` is the printed sqrt(1 - (2n+2)/(n^2+2)).
    """
    n = check_n(n)
    if variant == "derived":
        return math.sqrt((n - 2) / n)
    if variant == "paper":
        return math.sqrt(n * (n - 2) / (n * n + 2))
    raise ValueError(f"variant must be 'paper' or 'derived', got {variant!r}")


def steered_orthogonality(n):
    check_n(n)
    return 0.0


def trace_distance_closed(n):
    n = check_n(n, 2)
    return 1.0 / math.sqrt(n - 1)


def outcome_prob_tilde(n):
    """Probability that projecting alpha onto alpha~_i- succeeds."""
    n = check_n(n)
    return n / ((n + 2) * (n - 1))


def measurement_distance(n):
    """Pure-state trace distance between alpha~_i- and alpha_i+, 2/sqrt(n+2)."""
    n = check_n(n)
    return math.sqrt(4 / (n + 2))


def erratum_ratio(n):
    """Predicted paper/derived ratio for both c' and the phi overlap."""
    n = check_n(n)
    return math.sqrt(n * n / (n * n + 2))
