"""Declarative parametric vector optimization instances.

A problem bundles an ordering cone on the objective space, an
objective ``f(p, x)`` and a parameter-dependent feasible-set map
``C(p)``.  Three objective kinds are supported (dense affine, convex
quadratic, named builtin with analytic gradients) and three constraint
kinds (finite affine systems, one-parameter families of affine
inequalities over a real interval, named builtin smooth systems).

Problems are parsed from a JSON document whose numbers are decimal or
``"num/den"`` strings read as exact rationals; ``serialize_problem``
inverts the parse bit-exactly, which is what makes golden files and
problem digests stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from hashlib import sha256

from . import lp
from .errors import (
    DimensionMismatch,
    InfeasiblePoint,
    NotEfficient,
    SchemaError,
    UnsupportedConstraintKind,
)
from .geometry import HPolyhedron, OrderCone, solve_lp
from .rationals import (
    Matrix,
    ONE,
    Vec,
    ZERO,
    det,
    dot,
    format_rat,
    mat,
    mat_t_vec,
    rat,
    vec,
    vsub,
    zeros,
)

# ---------------------------------------------------------------------------
# Objective kinds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineObjective:
    """``f(p, x) = p_coef @ p + x_coef @ x + offset``."""

    p_coef: Matrix
    x_coef: Matrix
    offset: Vec


@dataclass(frozen=True)
class QuadraticObjective:
    """Per-output quadratics over the stacked variable ``z = (p, x)``:
    ``f_i(z) = z' quad_i z + lin_i . z + offset_i``."""

    quad: tuple[Matrix, ...]
    lin: Matrix
    offset: Vec


@dataclass(frozen=True)
class BuiltinObjective:
    """A named smooth objective shipped with the library."""

    name: str
    n_p: int
    n_x: int
    n_y: int
    fn: object = field(compare=False)
    jac: object = field(compare=False)
    k_convex_orthant: bool = True


# ---------------------------------------------------------------------------
# Constraint kinds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstraintRow:
    """``<p_coef, p> + <x_coef, x> + offset (<= | =) 0``."""

    p_coef: Vec
    x_coef: Vec
    offset: Fraction
    rel: str  # "le" | "eq"


@dataclass(frozen=True)
class AffineConstraints:
    rows: tuple[ConstraintRow, ...]


@dataclass(frozen=True)
class SemiInfiniteConstraints:
    """One affine inequality per scalar ``t`` in ``[t_lo, t_hi]``.

    Each coefficient is a polynomial in ``t`` of degree at most two,
    stored low-order first.  The feasible set is the intersection over
    the whole interval.
    """

    p_polys: tuple[Vec, ...]
    x_polys: tuple[Vec, ...]
    offset_poly: Vec
    t_lo: Fraction
    t_hi: Fraction

    def degree(self) -> int:
        deg = 0
        for poly in (*self.p_polys, *self.x_polys, self.offset_poly):
            for k, c in enumerate(poly):
                if c != 0:
                    deg = max(deg, k)
        return deg

    def row_at(self, t: Fraction) -> ConstraintRow:
        return ConstraintRow(
            tuple(poly_eval(poly, t) for poly in self.p_polys),
            tuple(poly_eval(poly, t) for poly in self.x_polys),
            poly_eval(self.offset_poly, t),
            "le",
        )


@dataclass(frozen=True)
class BuiltinConstraints:
    """A named smooth constraint system shipped with the library."""

    name: str
    n_p: int
    n_x: int
    n_rows: int
    fns: object = field(compare=False)
    jacs: object = field(compare=False)
    rels: tuple[str, ...] = ()
    tangent_hook: object = field(default=None, compare=False)
    convex: bool = True


def poly_eval(poly: Vec, t: Fraction) -> Fraction:
    out = ZERO
    for c in reversed(poly):
        out = out * t + c
    return out


# ---------------------------------------------------------------------------
# Problem and base point
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametricProblem:
    n_p: int
    n_x: int
    n_y: int
    cone: OrderCone
    objective: object
    constraints: object
    cone_tilde: OrderCone | None = None
    base_document: tuple[Vec, Vec] | None = None
    name: str | None = None

    def is_affine(self) -> bool:
        return isinstance(self.objective, (AffineObjective, QuadraticObjective)) and isinstance(
            self.constraints, (AffineConstraints, SemiInfiniteConstraints)
        )


@dataclass(frozen=True)
class BasePoint:
    """A validated reference point ``(p, x)`` with ``y = f(p, x)``."""

    p: Vec
    x: Vec
    y: Vec


# ---------------------------------------------------------------------------
# Objective evaluation
# ---------------------------------------------------------------------------


def _stack(p: Vec, x: Vec) -> Vec:
    return tuple(p) + tuple(x)


def objective_value(problem: ParametricProblem, p, x) -> Vec:
    """Exact objective value; rejects builtin objectives (float only)."""
    p, x = vec(p), vec(x)
    obj = problem.objective
    if isinstance(obj, AffineObjective):
        return tuple(
            dot(obj.p_coef[i], p) + dot(obj.x_coef[i], x) + obj.offset[i]
            for i in range(problem.n_y)
        )
    if isinstance(obj, QuadraticObjective):
        z = _stack(p, x)
        out = []
        for i in range(problem.n_y):
            q = obj.quad[i]
            quad_term = sum(
                (z[a] * q[a][b] * z[b] for a in range(len(z)) for b in range(len(z))),
                ZERO,
            )
            out.append(quad_term + dot(obj.lin[i], z) + obj.offset[i])
        return tuple(out)
    raise UnsupportedConstraintKind(
        "builtin objectives evaluate in floating point only"
    )


def objective_value_float(problem: ParametricProblem, p, x):
    obj = problem.objective
    if isinstance(obj, BuiltinObjective):
        return tuple(float(v) for v in obj.fn([float(a) for a in p], [float(a) for a in x]))
    return tuple(float(v) for v in objective_value(problem, p, x))


def objective_jacobians(problem: ParametricProblem, p, x):
    """``(J_p, J_x, exact)`` of the objective at ``(p, x)``.

    Exact rational matrices for affine/quadratic objectives; for
    builtins the analytic float gradients are rationalized through
    their decimal representation and flagged inexact.
    """
    p, x = vec(p), vec(x)
    obj = problem.objective
    if isinstance(obj, AffineObjective):
        return obj.p_coef, obj.x_coef, True
    if isinstance(obj, QuadraticObjective):
        z = _stack(p, x)
        jp, jx = [], []
        for i in range(problem.n_y):
            q = obj.quad[i]
            grad = tuple(
                2 * sum((q[a][b] * z[b] for b in range(len(z))), ZERO) + obj.lin[i][a]
                for a in range(len(z))
            )
            jp.append(grad[: problem.n_p])
            jx.append(grad[problem.n_p :])
        return tuple(jp), tuple(jx), True
    jp_f, jx_f = obj.jac([float(a) for a in p], [float(a) for a in x])
    jp = mat(jp_f)
    jx = mat(jx_f)
    return jp, jx, False


# ---------------------------------------------------------------------------
# Constraint geometry
# ---------------------------------------------------------------------------


def reduced_rows(problem: ParametricProblem) -> tuple[ConstraintRow, ...]:
    """Finite affine rows describing ``C``; semi-infinite families are
    reduced to their interval endpoints (exact for coefficients affine
    in the index) plus, for quadratic coefficient families with a known
    base point, the interior critical index of the base-point
    polynomial."""
    cons = problem.constraints
    if isinstance(cons, AffineConstraints):
        return cons.rows
    if isinstance(cons, SemiInfiniteConstraints):
        ts = [cons.t_lo, cons.t_hi]
        if cons.degree() >= 2 and problem.base_document is not None:
            t_crit = _base_point_critical_index(problem, cons)
            if t_crit is not None and cons.t_lo < t_crit < cons.t_hi:
                ts.append(t_crit)
        return tuple(cons.row_at(t) for t in sorted(set(ts)))
    raise UnsupportedConstraintKind(
        f"constraints of kind {type(cons).__name__} have no affine reduction"
    )


def _base_point_critical_index(problem, cons: SemiInfiniteConstraints):
    p, x = problem.base_document
    coeff = [ZERO, ZERO, ZERO]
    for k in range(3):
        c = ZERO
        for j, poly in enumerate(cons.p_polys):
            if k < len(poly):
                c += poly[k] * p[j]
        for j, poly in enumerate(cons.x_polys):
            if k < len(poly):
                c += poly[k] * x[j]
        if k < len(cons.offset_poly):
            c += cons.offset_poly[k]
        coeff[k] = c
    if coeff[2] == 0:
        return None
    return -coeff[1] / (2 * coeff[2])


def graph_polyhedron(problem: ParametricProblem) -> HPolyhedron:
    """``{(p, x) : x in C(p)}`` in H-form over the product space."""
    rows = reduced_rows(problem)
    n = problem.n_p + problem.n_x
    ineq, ineq_rhs, eq, eq_rhs = [], [], [], []
    for row in rows:
        coeffs = row.p_coef + row.x_coef
        if row.rel == "le":
            ineq.append(coeffs)
            ineq_rhs.append(-row.offset)
        else:
            eq.append(coeffs)
            eq_rhs.append(-row.offset)
    return HPolyhedron(n, tuple(ineq), tuple(ineq_rhs), tuple(eq), tuple(eq_rhs))


def feasible_polyhedron(problem: ParametricProblem, p) -> HPolyhedron:
    """``C(p)`` in x-space (affine and reduced semi-infinite paths)."""
    p = vec(p)
    rows = reduced_rows(problem)
    ineq, ineq_rhs, eq, eq_rhs = [], [], [], []
    for row in rows:
        shift = dot(row.p_coef, p) + row.offset
        if row.rel == "le":
            ineq.append(row.x_coef)
            ineq_rhs.append(-shift)
        else:
            eq.append(row.x_coef)
            eq_rhs.append(-shift)
    return HPolyhedron(
        problem.n_x, tuple(ineq), tuple(ineq_rhs), tuple(eq), tuple(eq_rhs)
    )


def constraint_values_float(problem: ParametricProblem, p, x):
    """``(g_i(p, x), rel)`` pairs in floating point, all constraint kinds."""
    cons = problem.constraints
    if isinstance(cons, BuiltinConstraints):
        vals = cons.fns([float(a) for a in p], [float(a) for a in x])
        return list(zip((float(v) for v in vals), cons.rels))
    pf = [float(a) for a in p]
    xf = [float(a) for a in x]
    out = []
    for row in reduced_rows(problem):
        val = (
            sum(float(a) * b for a, b in zip(row.p_coef, pf))
            + sum(float(a) * b for a, b in zip(row.x_coef, xf))
            + float(row.offset)
        )
        out.append((val, row.rel))
    return out


def point_feasible(problem: ParametricProblem, p, x, tol: float = 1e-9) -> bool:
    cons = problem.constraints
    if isinstance(cons, BuiltinConstraints):
        return all(
            (v <= tol if rel == "le" else abs(v) <= tol)
            for v, rel in constraint_values_float(problem, p, x)
        )
    p, x = vec(p), vec(x)
    for row in reduced_rows(problem):
        val = dot(row.p_coef, p) + dot(row.x_coef, x) + row.offset
        if row.rel == "le" and val > 0:
            return False
        if row.rel == "eq" and val != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _req(doc: dict, key: str, path: str):
    if key not in doc:
        raise SchemaError(f"{path}.{key}" if path else key, "missing field")
    return doc[key]


def _parse_vec(raw, path: str) -> Vec:
    if not isinstance(raw, (list, tuple)):
        raise SchemaError(path, "expected a list of numbers")
    try:
        return vec(raw)
    except (ValueError, TypeError) as exc:
        raise SchemaError(path, str(exc)) from exc


def _parse_mat(raw, path: str, rows: int, cols: int) -> Matrix:
    if not isinstance(raw, (list, tuple)) or len(raw) != rows:
        raise DimensionMismatch(f"{path}: expected {rows} rows")
    out = []
    for i, r in enumerate(raw):
        v = _parse_vec(r, f"{path}[{i}]")
        if len(v) != cols:
            raise DimensionMismatch(f"{path}[{i}]: expected {cols} columns")
        out.append(v)
    return tuple(out)


def _parse_cone(raw, path: str, dim: int) -> OrderCone:
    if not isinstance(raw, dict):
        raise SchemaError(path, "expected an object")
    if "generators" in raw:
        gens = [_parse_vec(g, f"{path}.generators[{i}]") for i, g in enumerate(raw["generators"])]
        for i, g in enumerate(gens):
            if len(g) != dim:
                raise DimensionMismatch(f"{path}.generators[{i}]: expected length {dim}")
        return OrderCone.from_generators(gens, dim=dim)
    if "halfspaces" in raw:
        rows = [_parse_vec(g, f"{path}.halfspaces[{i}]") for i, g in enumerate(raw["halfspaces"])]
        for i, g in enumerate(rows):
            if len(g) != dim:
                raise DimensionMismatch(f"{path}.halfspaces[{i}]: expected length {dim}")
        return OrderCone.from_halfspaces(rows, dim=dim)
    raise SchemaError(path, "cone needs 'generators' or 'halfspaces'")


def _parse_poly(raw, path: str) -> Vec:
    v = _parse_vec(raw, path)
    if len(v) == 0 or len(v) > 3:
        raise SchemaError(path, "coefficient polynomials have degree at most 2")
    return v


def _parse_objective(raw, path: str, n_p: int, n_x: int, n_y: int):
    from .builtins import BUILTIN_OBJECTIVES

    kind = _req(raw, "kind", path)
    if kind == "affine":
        return AffineObjective(
            _parse_mat(_req(raw, "p_coef", path), f"{path}.p_coef", n_y, n_p),
            _parse_mat(_req(raw, "x_coef", path), f"{path}.x_coef", n_y, n_x),
            _parse_vec(_req(raw, "offset", path), f"{path}.offset"),
        )
    if kind == "quadratic":
        n_z = n_p + n_x
        quads_raw = _req(raw, "quad", path)
        if len(quads_raw) != n_y:
            raise DimensionMismatch(f"{path}.quad: expected {n_y} matrices")
        quads = tuple(
            _parse_mat(q, f"{path}.quad[{i}]", n_z, n_z) for i, q in enumerate(quads_raw)
        )
        for i, q in enumerate(quads):
            for a in range(n_z):
                for b in range(a):
                    if q[a][b] != q[b][a]:
                        raise SchemaError(f"{path}.quad[{i}]", "matrix must be symmetric")
        return QuadraticObjective(
            quads,
            _parse_mat(_req(raw, "lin", path), f"{path}.lin", n_y, n_z),
            _parse_vec(_req(raw, "offset", path), f"{path}.offset"),
        )
    if kind == "builtin":
        name = _req(raw, "name", path)
        if name not in BUILTIN_OBJECTIVES:
            raise SchemaError(f"{path}.name", f"unknown builtin objective {name!r}")
        builtin = BUILTIN_OBJECTIVES[name]
        if (builtin.n_p, builtin.n_x, builtin.n_y) != (n_p, n_x, n_y):
            raise DimensionMismatch(
                f"{path}: builtin {name!r} has dims "
                f"({builtin.n_p},{builtin.n_x},{builtin.n_y})"
            )
        return builtin
    raise SchemaError(f"{path}.kind", f"unknown objective kind {kind!r}")


def _parse_constraints(raw, path: str, n_p: int, n_x: int):
    from .builtins import BUILTIN_CONSTRAINTS

    kind = _req(raw, "kind", path)
    if kind == "affine":
        rows_raw = _req(raw, "rows", path)
        rows = []
        for i, r in enumerate(rows_raw):
            rel = r.get("rel", "le")
            if rel not in ("le", "eq"):
                raise SchemaError(f"{path}.rows[{i}].rel", "rel must be 'le' or 'eq'")
            pc = _parse_vec(_req(r, "p_coef", f"{path}.rows[{i}]"), f"{path}.rows[{i}].p_coef")
            xc = _parse_vec(_req(r, "x_coef", f"{path}.rows[{i}]"), f"{path}.rows[{i}].x_coef")
            if len(pc) != n_p or len(xc) != n_x:
                raise DimensionMismatch(f"{path}.rows[{i}]: coefficient lengths")
            rows.append(ConstraintRow(pc, xc, rat(_req(r, "offset", f"{path}.rows[{i}]")), rel))
        return AffineConstraints(tuple(rows))
    if kind == "semi_infinite":
        fam = _req(raw, "family", path)
        p_polys = tuple(
            _parse_poly(q, f"{path}.family.p_coef[{i}]")
            for i, q in enumerate(_req(fam, "p_coef", f"{path}.family"))
        )
        x_polys = tuple(
            _parse_poly(q, f"{path}.family.x_coef[{i}]")
            for i, q in enumerate(_req(fam, "x_coef", f"{path}.family"))
        )
        if len(p_polys) != n_p or len(x_polys) != n_x:
            raise DimensionMismatch(f"{path}.family: coefficient counts")
        t_lo = rat(_req(fam, "t_lo", f"{path}.family"))
        t_hi = rat(_req(fam, "t_hi", f"{path}.family"))
        if not t_lo < t_hi:
            raise SchemaError(f"{path}.family", "t_lo must be below t_hi")
        return SemiInfiniteConstraints(
            p_polys,
            x_polys,
            _parse_poly(_req(fam, "offset", f"{path}.family"), f"{path}.family.offset"),
            t_lo,
            t_hi,
        )
    if kind == "builtin":
        name = _req(raw, "name", path)
        if name not in BUILTIN_CONSTRAINTS:
            raise SchemaError(f"{path}.name", f"unknown builtin constraints {name!r}")
        builtin = BUILTIN_CONSTRAINTS[name]
        if (builtin.n_p, builtin.n_x) != (n_p, n_x):
            raise DimensionMismatch(
                f"{path}: builtin {name!r} has dims ({builtin.n_p},{builtin.n_x})"
            )
        return builtin
    raise SchemaError(f"{path}.kind", f"unknown constraint kind {kind!r}")


def parse_problem(document) -> ParametricProblem:
    """Parse a problem document (dict, JSON text, or builtin name)."""
    from .builtins import BUILTIN_PROBLEMS

    if isinstance(document, str):
        name = document.strip()
        if name in BUILTIN_PROBLEMS:
            return parse_problem(BUILTIN_PROBLEMS[name]())
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError("<document>", f"not a builtin name or JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("<document>", "expected an object")
    dims = _req(document, "dims", "")
    try:
        n_p, n_x, n_y = int(dims["p"]), int(dims["x"]), int(dims["y"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("dims", "expected integer fields p, x, y") from exc
    if min(n_p, n_x, n_y) < 1:
        raise SchemaError("dims", "dimensions must be positive")
    cone = _parse_cone(_req(document, "cone", ""), "cone", n_y)
    cone_tilde = None
    if document.get("cone_tilde") is not None:
        cone_tilde = _parse_cone(document["cone_tilde"], "cone_tilde", n_y)
        for g in cone_tilde.cone.generators():
            if not cone.interior_contains(g):
                raise SchemaError(
                    "cone_tilde", f"generator {g} is not interior to the order cone"
                )
    objective = _parse_objective(_req(document, "objective", ""), "objective", n_p, n_x, n_y)
    constraints = _parse_constraints(
        _req(document, "constraints", ""), "constraints", n_p, n_x
    )
    base_doc = None
    if document.get("base_point") is not None:
        bp = document["base_point"]
        p = _parse_vec(_req(bp, "p", "base_point"), "base_point.p")
        x = _parse_vec(_req(bp, "x", "base_point"), "base_point.x")
        if len(p) != n_p or len(x) != n_x:
            raise DimensionMismatch("base_point: dimension mismatch")
        base_doc = (p, x)
    return ParametricProblem(
        n_p,
        n_x,
        n_y,
        cone,
        objective,
        constraints,
        cone_tilde=cone_tilde,
        base_document=base_doc,
        name=document.get("name"),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _ser_vec(v: Vec) -> list[str]:
    return [format_rat(a) for a in v]


def _ser_mat(m: Matrix) -> list[list[str]]:
    return [_ser_vec(r) for r in m]


def serialize_problem(problem: ParametricProblem) -> dict:
    """Canonical document; ``parse_problem`` inverts it exactly."""
    doc: dict = {
        "dims": {"p": problem.n_p, "x": problem.n_x, "y": problem.n_y},
        "cone": {"generators": _ser_mat(problem.cone.cone.generators())},
    }
    if problem.name:
        doc["name"] = problem.name
    if problem.cone_tilde is not None:
        doc["cone_tilde"] = {
            "generators": _ser_mat(problem.cone_tilde.cone.generators())
        }
    obj = problem.objective
    if isinstance(obj, AffineObjective):
        doc["objective"] = {
            "kind": "affine",
            "p_coef": _ser_mat(obj.p_coef),
            "x_coef": _ser_mat(obj.x_coef),
            "offset": _ser_vec(obj.offset),
        }
    elif isinstance(obj, QuadraticObjective):
        doc["objective"] = {
            "kind": "quadratic",
            "quad": [_ser_mat(q) for q in obj.quad],
            "lin": _ser_mat(obj.lin),
            "offset": _ser_vec(obj.offset),
        }
    else:
        doc["objective"] = {"kind": "builtin", "name": obj.name}
    cons = problem.constraints
    if isinstance(cons, AffineConstraints):
        doc["constraints"] = {
            "kind": "affine",
            "rows": [
                {
                    "p_coef": _ser_vec(r.p_coef),
                    "x_coef": _ser_vec(r.x_coef),
                    "offset": format_rat(r.offset),
                    "rel": r.rel,
                }
                for r in cons.rows
            ],
        }
    elif isinstance(cons, SemiInfiniteConstraints):
        doc["constraints"] = {
            "kind": "semi_infinite",
            "family": {
                "p_coef": [_ser_vec(q) for q in cons.p_polys],
                "x_coef": [_ser_vec(q) for q in cons.x_polys],
                "offset": _ser_vec(cons.offset_poly),
                "t_lo": format_rat(cons.t_lo),
                "t_hi": format_rat(cons.t_hi),
            },
        }
    else:
        doc["constraints"] = {"kind": "builtin", "name": cons.name}
    if problem.base_document is not None:
        p, x = problem.base_document
        doc["base_point"] = {"p": _ser_vec(p), "x": _ser_vec(x)}
    return doc


def problem_digest(problem: ParametricProblem) -> str:
    text = json.dumps(serialize_problem(problem), sort_keys=True, separators=(",", ":"))
    return sha256(text.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def _psd_exact(m: Matrix) -> tuple[bool, str]:
    """PSD test for small rational symmetric matrices: every principal
    minor must be nonnegative."""
    import itertools

    n = len(m)
    for size in range(1, n + 1):
        for idx in itertools.combinations(range(n), size):
            sub = tuple(tuple(m[a][b] for b in idx) for a in idx)
            d = det(sub)
            if d < 0:
                return False, f"principal minor {idx} has determinant {format_rat(d)}"
    return True, ""


def _psd_float(m: Matrix) -> tuple[bool, str]:
    import numpy as np

    eigs = np.linalg.eigvalsh(np.array([[float(v) for v in row] for row in m]))
    low = float(eigs.min()) if len(eigs) else 0.0
    return low >= -1e-9, f"minimum eigenvalue {low:.3e}"


def validate(problem: ParametricProblem) -> ValidationReport:
    """Structural convexity report; failures are reported, never raised."""
    checks: list[CheckResult] = []
    checks.append(CheckResult("cone_pointed", True, "enforced at construction"))
    if problem.cone_tilde is not None:
        inside = all(
            problem.cone.interior_contains(g)
            for g in problem.cone_tilde.cone.generators()
        )
        checks.append(
            CheckResult("cone_tilde_interior", inside, "generators tested against int K")
        )

    obj = problem.objective
    if isinstance(obj, AffineObjective):
        checks.append(CheckResult("objective_order_convex", True, "affine objective"))
    elif isinstance(obj, QuadraticObjective):
        ok_all = True
        detail = ""
        for w in problem.cone.dual_rays:
            combo = _combine_quadratics(obj, w)
            if len(combo) <= 4:
                ok, msg = _psd_exact(combo)
            else:
                ok, msg = _psd_float(combo)
            if not ok:
                ok_all = False
                detail = f"witness w = {tuple(map(format_rat, w))}: {msg}"
                break
        checks.append(CheckResult("objective_order_convex", ok_all, detail))
    else:
        checks.append(
            CheckResult(
                "objective_order_convex",
                obj.k_convex_orthant,
                f"builtin {obj.name!r} registry flag",
            )
        )

    cons = problem.constraints
    if isinstance(cons, (AffineConstraints, SemiInfiniteConstraints)):
        checks.append(CheckResult("constraints_convex_closed", True, "affine rows"))
    else:
        checks.append(
            CheckResult(
                "constraints_convex_closed", cons.convex, f"builtin {cons.name!r}"
            )
        )

    checks.append(_midpoint_smoke(problem))
    return ValidationReport(tuple(checks))


def _combine_quadratics(obj: QuadraticObjective, w: Vec) -> Matrix:
    n = len(obj.quad[0]) if obj.quad else 0
    return tuple(
        tuple(
            sum((w[i] * obj.quad[i][a][b] for i in range(len(obj.quad))), ZERO)
            for b in range(n)
        )
        for a in range(n)
    )


def _midpoint_smoke(problem: ParametricProblem) -> CheckResult:
    """Sampled midpoint test of composite-map convexity: averaged images
    must land in the image at the averaged parameter, pushed up the cone."""
    if not problem.is_affine() or not isinstance(problem.objective, AffineObjective):
        return CheckResult("epi_midpoint_smoke", True, "skipped (non-affine path)")
    samples = _midpoint_probe_pairs(problem.n_p)
    cone_h = problem.cone.cone.halfspaces()
    for p1, p2 in samples:
        x1 = _any_feasible(problem, p1)
        x2 = _any_feasible(problem, p2)
        if x1 is None or x2 is None:
            continue
        y1 = objective_value(problem, p1, x1)
        y2 = objective_value(problem, p2, x2)
        pm = tuple((a + b) / 2 for a, b in zip(p1, p2))
        ym = tuple((a + b) / 2 for a, b in zip(y1, y2))
        if not _image_membership(problem, pm, ym, cone_h):
            return CheckResult(
                "epi_midpoint_smoke",
                False,
                f"midpoint of images at {p1}/{p2} escapes the image cone",
            )
    return CheckResult("epi_midpoint_smoke", True, "sampled midpoints verified")


def _midpoint_probe_pairs(n_p: int):
    base = zeros(n_p)
    out = []
    for j in range(n_p):
        e = tuple(ONE if i == j else ZERO for i in range(n_p))
        out.append((base, e))
        out.append((e, tuple(-a for a in e)))
    return out


def _any_feasible(problem, p):
    from .geometry import feasible_point

    return feasible_point(feasible_polyhedron(problem, p))


def _image_membership(problem, p, y, cone_h) -> bool:
    """Exact test of ``y in f(p, C(p)) + K`` by LP feasibility."""
    obj = problem.objective
    poly = feasible_polyhedron(problem, p)
    shift = tuple(
        dot(obj.p_coef[i], p) + obj.offset[i] for i in range(problem.n_y)
    )
    rows = list(poly.ineq_matrix)
    rhs = list(poly.ineq_rhs)
    for krow, kb in zip(cone_h.ineq_matrix, cone_h.ineq_rhs):
        # y - f(p,x) in K: krow . (y - x_coef x - shift) <= kb (= 0)
        coeff = tuple(-a for a in mat_t_vec(obj.x_coef, krow))
        rows.append(coeff)
        rhs.append(kb - dot(krow, vsub(y, shift)))
    test = HPolyhedron(
        problem.n_x, tuple(rows), tuple(rhs), poly.eq_matrix, poly.eq_rhs
    )
    return lp.feasible_raw(
        test.ineq_matrix, test.ineq_rhs, test.eq_matrix, test.eq_rhs, test.dim
    ).status == lp.OPTIMAL


# ---------------------------------------------------------------------------
# Base point checking
# ---------------------------------------------------------------------------


def check_solution_point(problem: ParametricProblem, p, x, variant: str = "min") -> BasePoint:
    """Verify feasibility and (variant-appropriate) efficiency of (p, x).

    The objective value is always recomputed from ``(p, x)``.  On the
    affine path efficiency is decided exactly by scalarized LPs; builtin
    objectives fall back to a frontier-cloud comparison at sampling
    resolution.
    """
    p, x = vec(p), vec(x)
    if len(p) != problem.n_p or len(x) != problem.n_x:
        raise DimensionMismatch("base point dimensions do not match the problem")
    if not point_feasible(problem, p, x):
        raise InfeasiblePoint(f"x = {x} violates the constraints at p = {p}")
    if isinstance(problem.objective, BuiltinObjective):
        y = vec(objective_value_float(problem, p, x))
        _check_efficiency_sampled(problem, p, y, variant)
        return BasePoint(p, x, y)
    y = objective_value(problem, p, x)
    if isinstance(problem.objective, AffineObjective) and problem.is_affine():
        _check_efficiency_exact(problem, p, y, variant)
    else:
        _check_efficiency_sampled(problem, p, y, variant)
    return BasePoint(p, x, y)


def _check_efficiency_exact(problem, p, y_bar, variant):
    obj = problem.objective
    poly = feasible_polyhedron(problem, p)
    cone = problem.cone
    cone_h = cone.cone.halfspaces()
    shift = tuple(dot(obj.p_coef[i], p) + obj.offset[i] for i in range(problem.n_y))
    if variant in ("min", "proper"):
        # Restrict to points with image below y_bar along the cone, then
        # push a strictly positive functional: efficiency means no descent.
        rows = list(poly.ineq_matrix)
        rhs = list(poly.ineq_rhs)
        for krow in cone_h.ineq_matrix:
            rows.append(tuple(-a for a in mat_t_vec(obj.x_coef, krow)))
            rhs.append(-dot(krow, vsub(y_bar, shift)))
        region = HPolyhedron(
            problem.n_x, tuple(rows), tuple(rhs), poly.eq_matrix, poly.eq_rhs
        )
        w = cone.interior_functional()
        cost = mat_t_vec(obj.x_coef, w)
        res = solve_lp(region, cost)
        target = dot(w, vsub(y_bar, shift))
        if res.status != lp.OPTIMAL or res.value != target:
            witness = None
            if res.status == lp.OPTIMAL:
                witness = objective_value(problem, p, res.point)
            raise NotEfficient(
                f"{y_bar} is dominated within the image at p = {p}", witness=witness
            )
        if variant == "proper":
            # Additionally require a strictly positive functional that the
            # point minimizes over the whole image (sufficient certificate).
            candidates = [w] + [
                g for g in cone.dual_rays if cone.strictly_positive(g)
            ]
            for cand in candidates:
                full = solve_lp(poly, mat_t_vec(obj.x_coef, cand))
                if full.status == lp.OPTIMAL and full.value == dot(
                    cand, vsub(y_bar, shift)
                ):
                    return
            raise NotEfficient(
                f"no strictly positive scalarization certificate found for {y_bar}"
            )
        return
    if variant == "weak":
        if not cone.is_solid:
            from .errors import ConeNotSolid

            raise ConeNotSolid("weak efficiency needs a solid ordering cone")
        # y_bar weakly efficient iff nothing sits strictly below through
        # the cone interior: max t with y_bar - f - t*u in K equals zero.
        u = _interior_direction(cone)
        n = problem.n_x
        rows = [row + (ZERO,) for row in poly.ineq_matrix]
        rhs = list(poly.ineq_rhs)
        for krow in cone_h.ineq_matrix:
            coeff = tuple(-a for a in mat_t_vec(obj.x_coef, krow)) + (-dot(krow, u),)
            rows.append(coeff)
            rhs.append(-dot(krow, vsub(y_bar, shift)))
        tpos = zeros(n) + (-ONE,)
        rows.append(tpos)
        rhs.append(ZERO)
        eqs = tuple(row + (ZERO,) for row in poly.eq_matrix)
        region = HPolyhedron(n + 1, tuple(rows), tuple(rhs), eqs, poly.eq_rhs)
        res = solve_lp(region, zeros(n) + (ONE,), maximize=True)
        if res.status == lp.OPTIMAL and res.value == 0:
            return
        witness = None
        if res.status == lp.OPTIMAL:
            witness = objective_value(problem, p, res.point[:-1])
        raise NotEfficient(
            f"{y_bar} is strictly dominated within the image at p = {p}",
            witness=witness,
        )
    raise ValueError(f"unknown variant {variant!r}")


def _interior_direction(cone: OrderCone) -> Vec:
    gens = cone.cone.generators()
    if not gens:
        raise ValueError("interior direction of the zero cone is undefined")
    total = zeros(cone.dim)
    for g in gens:
        total = tuple(a + b for a, b in zip(total, g))
    return total


def _check_efficiency_sampled(problem, p, y_bar, variant):
    from .efficiency import frontier_sample

    cloud = frontier_sample(problem, p)
    cone = problem.cone
    for point in cloud:
        d = vsub(y_bar, vec(point))
        if variant == "weak":
            dominated = cone.interior_contains(d)
        else:
            dominated = cone.contains(d) and any(a != 0 for a in d)
        if dominated:
            raise NotEfficient(
                f"{y_bar} dominated by sampled frontier point {point}",
                witness=point,
            )


def problem_base_point(problem: ParametricProblem, variant: str = "min") -> BasePoint:
    """The document's base point, validated; raises when absent."""
    if problem.base_document is None:
        raise InfeasiblePoint("problem document carries no base point")
    p, x = problem.base_document
    return check_solution_point(problem, p, x, variant=variant)
