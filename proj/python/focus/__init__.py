"""Focused stochastic local search: charges, convergence conditions, walks,
exact verifiers and an acyclic edge coloring solver."""

from ._core import (
    CapExceeded,
    Graph,
    Instance,
    ParseError,
    PreconditionError,
    aec_color,
    analyze_condition,
    causality_digraph,
    check_atomicity,
    cycles_through_edge,
    degeneracy_order,
    degenerate_coefficient,
    flaw_charge,
    forest_probabilities,
    forest_weight_sum,
    general_margin,
    harmonic_kernel,
    palette_size,
    random_planar_triangulation,
    random_series_parallel,
    regeneration_deviation,
    run_walk,
    span,
    verify_acyclic_coloring,
    witness_distribution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
