"""Shipped builtin objectives, constraint systems, and example problems.

Builtin smooth functions come with analytic gradients so the gradient
contract stays testable; user plugins are deliberately not supported.
Example problems are stored as canonical documents (rationals as
strings) so that ``parse_problem`` round-trips them bit-exactly.
"""

from __future__ import annotations

import math

from .geometry import HPolyhedron, PolyCone
from .problems import BuiltinConstraints, BuiltinObjective
from .rationals import ONE, ZERO, zeros


def _abs_pair_fn(p, x):
    v = abs(x[0])
    return (v, v)


def _abs_pair_jac(p, x):
    s = math.copysign(1.0, x[0]) if x[0] != 0 else 0.0
    return ([[0.0]] * 2, [[s], [s]])


def _exp_pair_fn(p, x):
    return (math.exp(x[0]), math.exp(-x[0]))


def _exp_pair_jac(p, x):
    return ([[0.0]] * 2, [[math.exp(x[0])], [-math.exp(-x[0])]])


BUILTIN_OBJECTIVES: dict[str, BuiltinObjective] = {
    "abs_pair": BuiltinObjective(
        "abs_pair", 1, 1, 2, _abs_pair_fn, _abs_pair_jac, k_convex_orthant=True
    ),
    "exp_pair": BuiltinObjective(
        "exp_pair", 1, 1, 2, _exp_pair_fn, _exp_pair_jac, k_convex_orthant=True
    ),
}


def _square_fns(p, x):
    return (x[0] * x[0],)


def _square_jacs(p, x):
    return [((0.0,), (2.0 * x[0],))]


def _square_tangent(problem, base):
    # The feasible map is constantly {0}, so its graph is P x {0}.
    n = problem.n_p + problem.n_x
    eq = tuple(
        tuple(ONE if j == problem.n_p + k else ZERO for j in range(n))
        for k in range(problem.n_x)
    )
    return PolyCone.from_halfspaces(
        HPolyhedron(n, (), (), eq, zeros(len(eq)))
    )


BUILTIN_CONSTRAINTS: dict[str, BuiltinConstraints] = {
    "square_le_zero": BuiltinConstraints(
        "square_le_zero",
        1,
        1,
        1,
        _square_fns,
        _square_jacs,
        rels=("le",),
        tangent_hook=_square_tangent,
        convex=True,
    ),
}


# ---------------------------------------------------------------------------
# Example problems
# ---------------------------------------------------------------------------


def _orthant_2d():
    return {"generators": [["1", "0"], ["0", "1"]]}


def _doc_vshape_tracking():
    """Scalar parameter tracked in absolute value; frontier is a single
    kink point that moves nonsmoothly with the parameter."""
    return {
        "name": "example_2_1",
        "dims": {"p": 1, "x": 1, "y": 2},
        "cone": _orthant_2d(),
        "objective": {"kind": "builtin", "name": "abs_pair"},
        "constraints": {
            "kind": "affine",
            "rows": [
                {"p_coef": ["1"], "x_coef": ["-1"], "offset": "0", "rel": "le"},
                {"p_coef": ["-1"], "x_coef": ["-1"], "offset": "0", "rel": "le"},
            ],
        },
        "base_point": {"p": ["1"], "x": ["1"]},
    }


def _doc_linear_frontier(with_base: bool, name: str):
    """Three parameters, one decision variable, objectives (x, 2x); the
    frontier is the affine map p -> (s, 2s) with s = p1 + 2 p2 + p3."""
    doc = {
        "name": name,
        "dims": {"p": 3, "x": 1, "y": 2},
        "cone": _orthant_2d(),
        "objective": {
            "kind": "affine",
            "p_coef": [["0", "0", "0"], ["0", "0", "0"]],
            "x_coef": [["1"], ["2"]],
            "offset": ["0", "0"],
        },
        "constraints": {
            "kind": "affine",
            "rows": [
                {
                    "p_coef": ["1", "2", "1"],
                    "x_coef": ["-1"],
                    "offset": "0",
                    "rel": "le",
                }
            ],
        },
    }
    if with_base:
        doc["base_point"] = {"p": ["0", "0", "0"], "x": ["0"]}
    return doc


def _doc_interval_family():
    """A one-parameter family of inequalities indexed by t in [0, 1]
    whose intersection pins the feasible set to the nonnegative
    quadrant; the frontier is the single point (2, 3)."""
    return {
        "name": "example_5_1",
        "dims": {"p": 1, "x": 2, "y": 2},
        "cone": _orthant_2d(),
        "objective": {
            "kind": "affine",
            "p_coef": [["0"], ["0"]],
            "x_coef": [["1", "0"], ["0", "1"]],
            "offset": ["2", "3"],
        },
        "constraints": {
            "kind": "semi_infinite",
            "family": {
                "p_coef": [["0"]],
                "x_coef": [["0", "-1"], ["-1", "1"]],
                "offset": ["0"],
                "t_lo": "0",
                "t_hi": "1",
            },
        },
        "base_point": {"p": ["0"], "x": ["0", "0"]},
    }


def _doc_ray_counterexample():
    """Every attainable point is dominated along a feasible ray, so the
    frontier is empty and no domination certificate can pass."""
    return {
        "name": "ray_counterexample",
        "dims": {"p": 1, "x": 1, "y": 2},
        "cone": _orthant_2d(),
        "objective": {
            "kind": "affine",
            "p_coef": [["0"], ["0"]],
            "x_coef": [["-1"], ["0"]],
            "offset": ["0", "0"],
        },
        "constraints": {
            "kind": "affine",
            "rows": [
                {"p_coef": ["0"], "x_coef": ["-1"], "offset": "0", "rel": "le"}
            ],
        },
    }


BUILTIN_PROBLEMS = {
    "example_2_1": _doc_vshape_tracking,
    "example_2_2": lambda: _doc_linear_frontier(False, "example_2_2"),
    "example_4_1": lambda: _doc_linear_frontier(True, "example_4_1"),
    "example_5_1": _doc_interval_family,
    "ray_counterexample": _doc_ray_counterexample,
}
