"""Exclusivity-graph workbench.

Exact classical/fractional bounds, a Lovász-theta SDP, quantum-realization
checks, photonic setup synthesis, and Monte Carlo experiment simulation for
exclusivity-graph tasks. The heavy lifting lives in the compiled `_core`
extension; this package just re-exports it.
"""

from ._core import (
    ExclusivityGraph,
    SolverError,
    analyze_projection,
    best_classical_assignment,
    bounds_report,
    canonical_graph,
    canonical_realization,
    design_preparation,
    epsilon_certify,
    fractional_packing,
    independence_number,
    lovasz_theta,
    maximal_cliques,
    orthogonality_graph,
    prepare_state,
    quantum_sum,
    run_experiment,
    verify_realization,
)

__all__ = [
    "ExclusivityGraph",
    "SolverError",
    "analyze_projection",
    "best_classical_assignment",
    "bounds_report",
    "canonical_graph",
    "canonical_realization",
    "design_preparation",
    "epsilon_certify",
    "fractional_packing",
    "independence_number",
    "lovasz_theta",
    "maximal_cliques",
    "orthogonality_graph",
    "prepare_state",
    "quantum_sum",
    "run_experiment",
    "verify_realization",
]
