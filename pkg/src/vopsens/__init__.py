"""Sensitivity analysis of efficient frontiers in parametric convex
vector optimization.

Exact rational polyhedral calculus for the closed-form coderivative
formulas of perturbation maps, plus an independent sampling oracle that
cross-checks every computed normal vector against a brute-force
Fréchet-cone membership test.
"""

__version__ = "0.1.0"

from .geometry import (
    HPolyhedron,
    OrderCone,
    PolyCone,
    cone_equal,
    cone_hull,
    is_linear_subspace,
    is_member,
    lineality,
    lp_feasible,
    minkowski_sum,
    normal_cone,
    polar_cone,
    poly_equal,
    project,
    tangent_cone,
    vertices,
)

__all__ = [
    "HPolyhedron",
    "OrderCone",
    "PolyCone",
    "cone_equal",
    "cone_hull",
    "is_linear_subspace",
    "is_member",
    "lineality",
    "lp_feasible",
    "minkowski_sum",
    "normal_cone",
    "polar_cone",
    "poly_equal",
    "project",
    "tangent_cone",
    "vertices",
    "__version__",
]
