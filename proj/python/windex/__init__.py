"""Winding numbers, the index-weighted Stokes identity and loop cutting for closed plane curves."""

from ._windex import (
    GRAMMAR,
    Curve,
    WindexError,
    circle,
    counterexample_audit,
    cut,
    eval_expr,
    flower,
    format_expr,
    fourier_loop,
    index_map,
    integrate,
    lemniscate,
    lemniscate_curvature,
    nested_loop_curve,
    obstruction,
    orient_positive,
    positively_curved,
    self_intersections,
    singularities,
    verify_stokes,
    winding_number,
)

__all__ = [
    "GRAMMAR",
    "Curve",
    "WindexError",
    "circle",
    "counterexample_audit",
    "cut",
    "eval_expr",
    "flower",
    "format_expr",
    "fourier_loop",
    "index_map",
    "integrate",
    "lemniscate",
    "lemniscate_curvature",
    "nested_loop_curve",
    "obstruction",
    "orient_positive",
    "positively_curved",
    "self_intersections",
    "singularities",
    "verify_stokes",
    "winding_number",
]
