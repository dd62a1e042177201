"""Exact filling norms, hyperbolicity measurements and cusped spaces on finite graphs.

Chains are dicts mapping vertex tuples to Fraction (or int / "p/q") coefficients.
"""

from ._core import (
    Graph,
    HypcohError,
    Metric,
    cayley_ball,
    check_axioms,
    cusp,
    decompose,
    delta,
    filling_norm,
    format_graph,
    homological_area,
    ipi_constant,
    parse_graph,
    run_pipeline,
    smallest_saturating_radius,
)

__all__ = [
    "Graph",
    "HypcohError",
    "Metric",
    "cayley_ball",
    "check_axioms",
    "cusp",
    "decompose",
    "delta",
    "filling_norm",
    "format_graph",
    "homological_area",
    "ipi_constant",
    "parse_graph",
    "run_pipeline",
    "smallest_saturating_radius",
]
