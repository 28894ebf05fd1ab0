"""Exact homomorphism densities, non-positivity certificates and graph codes.

Thin convenience layer over the compiled module. Hypergraphs travel in the
"r v m" text format, kernels as JSON strings, exact rationals as "p/q"
strings convertible with fractions.Fraction.
"""

from fractions import Fraction

from ._poslab import (
    build_hq,
    certify_odd,
    code_bound,
    complete_graph,
    constant_kernel,
    copy_probability,
    cycle_graph,
    density,
    enumerate_copies,
    expansion_density,
    grid,
    hom_count,
    independence_polynomial,
    kernel_of,
    levi,
    levi_certify,
    max_code,
    mc_density,
    minimize_density,
    odd_witness_kernel,
    parity_kernel,
    path_graph,
    q_vanishing,
    single_edge,
    stable_involution,
    star_graph,
    tight_cycle,
    validate_odd,
    BudgetExceeded,
    ParseFailure,
    PreconditionViolation,
)

__all__ = [
    "build_hq",
    "certify_odd",
    "code_bound",
    "complete_graph",
    "constant_kernel",
    "copy_probability",
    "cycle_graph",
    "density",
    "density_fraction",
    "enumerate_copies",
    "expansion_density",
    "grid",
    "hom_count",
    "independence_polynomial",
    "kernel_of",
    "levi",
    "levi_certify",
    "max_code",
    "mc_density",
    "minimize_density",
    "odd_witness_kernel",
    "parity_kernel",
    "path_graph",
    "q_vanishing",
    "single_edge",
    "stable_involution",
    "star_graph",
    "tight_cycle",
    "validate_odd",
    "BudgetExceeded",
    "ParseFailure",
    "PreconditionViolation",
]


def density_fraction(hypergraph_text: str, kernel_json: str) -> Fraction:
    """Exact density as a fractions.Fraction."""
    return Fraction(density(hypergraph_text, kernel_json))
