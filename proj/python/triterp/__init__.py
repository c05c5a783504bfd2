"""Lagrange interpolation on triangles with circumradius-scaled error bounds."""

from ._core import (
    BEstimate,
    Point2,
    Poly2,
    StandardForm,
    Triangle,
    TriangleMetrics,
    b_poly_lower,
    b_sample_lower,
    bound_ratio,
    error_poly,
    interpolate,
    metrics,
    node_count,
    nodes,
    seminorm,
    standard_form,
)

__all__ = [
    "BEstimate",
    "Point2",
    "Poly2",
    "StandardForm",
    "Triangle",
    "TriangleMetrics",
    "b_poly_lower",
    "b_sample_lower",
    "bound_ratio",
    "error_poly",
    "interpolate",
    "metrics",
    "node_count",
    "nodes",
    "seminorm",
    "standard_form",
]
