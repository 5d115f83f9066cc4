"""Constraint qualifications and multiplier descriptions of the
constraint-map coderivative.

For finitely many differentiable constraints, under the Abadie
qualification the coderivative of the constraint map is the image of a
multiplier polyhedron: nonnegative multipliers on active inequalities,
free ones on equalities, complementary slackness built in.  For a
one-parameter family of affine inequalities, the basic constraint
qualification bounds the graph's normal cone by the convex cone of
active-index gradients, which collapses to finitely many generators
because the gradient curve is polynomial in the index.

These are deliberately separate pipelines from the graph-slice
coderivative in :mod:`vopsens.coderivative`: the exact agreement of the
two routes is one of the library's standing cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .coderivative import CoderivSet, QualReport, qualification_check, scalar_subdifferential
from .errors import (
    ACQRequired,
    BCQRequired,
    DominationNotCertified,
    InfeasiblePoint,
    QualificationFailed,
    UnsupportedConstraintKind,
)
from .geometry import (
    HPolyhedron,
    PolyCone,
    cone_contains,
    normal_cone,
    project,
    tangent_cone,
)
from .problems import (
    AffineConstraints,
    BasePoint,
    BuiltinConstraints,
    ParametricProblem,
    SemiInfiniteConstraints,
    graph_polyhedron,
    poly_eval,
    reduced_rows,
)
from .rationals import Matrix, ONE, Vec, ZERO, dot, mat, rat, vec, vneg, zeros


# ---------------------------------------------------------------------------
# Active sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActiveSet:
    """Active constraints at a base point.

    Finite systems report ``indices``; interval families report closed
    ``intervals`` plus isolated ``points`` where the index polynomial
    vanishes.  Irrational roots of quadratic index polynomials are kept
    as ``float_points`` at 1e-12 resolution and flag the set inexact.
    """

    kind: str  # "finite" | "interval"
    indices: tuple[int, ...] = ()
    intervals: tuple[tuple[Fraction, Fraction], ...] = ()
    points: tuple[Fraction, ...] = ()
    float_points: tuple[float, ...] = ()
    exact: bool = True

    def is_empty(self) -> bool:
        return not (self.indices or self.intervals or self.points or self.float_points)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _family_value_poly(cons: SemiInfiniteConstraints, p: Vec, x: Vec) -> tuple[Fraction, Fraction, Fraction]:
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
    return coeff[0], coeff[1], coeff[2]


def active_set(problem: ParametricProblem, base: BasePoint) -> ActiveSet:
    """Exactly active constraint indices at the base point."""
    p, x = vec(base.p), vec(base.x)
    cons = problem.constraints
    if isinstance(cons, AffineConstraints):
        indices = []
        for i, row in enumerate(cons.rows):
            val = dot(row.p_coef, p) + dot(row.x_coef, x) + row.offset
            if row.rel == "le" and val > 0:
                raise InfeasiblePoint(f"row {i} is violated at the base point")
            if row.rel == "eq" and val != 0:
                raise InfeasiblePoint(f"row {i} is violated at the base point")
            if val == 0:
                indices.append(i)
        return ActiveSet("finite", indices=tuple(indices))
    if isinstance(cons, BuiltinConstraints):
        vals = cons.fns([float(a) for a in p], [float(a) for a in x])
        indices = []
        for i, (v, rel) in enumerate(zip(vals, cons.rels)):
            if rel == "le" and v > 1e-9:
                raise InfeasiblePoint(f"row {i} is violated at the base point")
            if rel == "eq" and abs(v) > 1e-9:
                raise InfeasiblePoint(f"row {i} is violated at the base point")
            if abs(v) <= 1e-9:
                indices.append(i)
        return ActiveSet("finite", indices=tuple(indices), exact=False)
    if isinstance(cons, SemiInfiniteConstraints):
        return _interval_active_set(cons, p, x)
    raise UnsupportedConstraintKind(type(cons).__name__)


def _interval_active_set(cons: SemiInfiniteConstraints, p: Vec, x: Vec) -> ActiveSet:
    c0, c1, c2 = _family_value_poly(cons, p, x)
    lo, hi = cons.t_lo, cons.t_hi

    def value(t: Fraction) -> Fraction:
        return c0 + c1 * t + c2 * t * t

    # Feasibility: the polynomial must be nonpositive on the interval.
    worst = max(value(lo), value(hi))
    if c2 < 0:
        t_vertex = -c1 / (2 * c2)
        if lo < t_vertex < hi:
            worst = max(worst, value(t_vertex))
    if worst > 0:
        raise InfeasiblePoint("the index family is violated on the interval")

    if c0 == 0 and c1 == 0 and c2 == 0:
        return ActiveSet("interval", intervals=((lo, hi),))
    if c2 == 0:
        if c1 == 0:
            return ActiveSet("interval")  # constant negative
        root = -c0 / c1
        if lo <= root <= hi:
            return ActiveSet("interval", points=(root,))
        return ActiveSet("interval")
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return ActiveSet("interval")
    if disc == 0:
        root = -c1 / (2 * c2)
        pts = (root,) if lo <= root <= hi else ()
        return ActiveSet("interval", points=pts)
    s = _rational_sqrt(disc)
    if s is not None:
        r1 = (-c1 - s) / (2 * c2)
        r2 = (-c1 + s) / (2 * c2)
        pts = tuple(sorted(r for r in (r1, r2) if lo <= r <= hi))
        return ActiveSet("interval", points=pts)
    sf = math.sqrt(float(disc))
    r1 = (-float(c1) - sf) / (2 * float(c2))
    r2 = (-float(c1) + sf) / (2 * float(c2))
    pts = tuple(sorted(r for r in (r1, r2) if float(lo) - 1e-12 <= r <= float(hi) + 1e-12))
    return ActiveSet("interval", float_points=pts, exact=False)


# ---------------------------------------------------------------------------
# Gradients of the constraint rows
# ---------------------------------------------------------------------------


def _finite_gradients(problem: ParametricProblem, base: BasePoint):
    """``(gradient over (p, x), rel, active)`` triples for finite systems."""
    cons = problem.constraints
    p, x = vec(base.p), vec(base.x)
    if isinstance(cons, (AffineConstraints, SemiInfiniteConstraints)):
        rows = reduced_rows(problem)
        out = []
        for row in rows:
            val = dot(row.p_coef, p) + dot(row.x_coef, x) + row.offset
            active = val == 0 if row.rel == "le" else True
            out.append((row.p_coef + row.x_coef, row.rel, active))
        return out, True
    if isinstance(cons, BuiltinConstraints):
        vals = cons.fns([float(a) for a in p], [float(a) for a in x])
        jacs = cons.jacs([float(a) for a in p], [float(a) for a in x])
        out = []
        for (v, rel, (gp, gx)) in zip(vals, cons.rels, jacs):
            grad = vec(gp) + vec(gx)
            active = abs(v) <= 1e-9 if rel == "le" else True
            out.append((grad, rel, active))
        return out, False
    raise UnsupportedConstraintKind(type(cons).__name__)


# ---------------------------------------------------------------------------
# Abadie constraint qualification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AcqReport:
    holds: bool
    tangent: PolyCone
    linearization: PolyCone
    exact: bool = True


def acq_check(problem: ParametricProblem, base: BasePoint) -> AcqReport:
    """Compare the graph tangent cone with the gradient linearization cone.

    The tangent cone is always inside the linearization cone for
    differentiable rows, so ``holds`` states that the two are equal.
    """
    cons = problem.constraints
    grads, exact = _finite_gradients(problem, base)
    n = problem.n_p + problem.n_x
    ineq = tuple(g for g, rel, active in grads if rel == "le" and active)
    eq = tuple(g for g, rel, _ in grads if rel == "eq")
    linearization = PolyCone.from_halfspaces(
        HPolyhedron(n, ineq, zeros(len(ineq)), eq, zeros(len(eq))).canonical()
    )
    if isinstance(cons, BuiltinConstraints):
        if cons.tangent_hook is None:
            raise UnsupportedConstraintKind(
                f"builtin {cons.name!r} carries no tangent-cone hook"
            )
        tangent = cons.tangent_hook(problem, base)
    else:
        tangent = tangent_cone(graph_polyhedron(problem), tuple(base.p) + tuple(base.x))
    return AcqReport(cone_contains(tangent, linearization), tangent, linearization, exact)


# ---------------------------------------------------------------------------
# Multiplier polyhedron and its parameter-gradient image
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplierPolyhedron:
    """Multipliers certifying ``(p*, -x*)`` as an active-gradient combination."""

    polyhedron: HPolyhedron  # in multiplier space
    gradients_p: Matrix
    gradients_x: Matrix
    query: Vec
    exact: bool = True


def multiplier_polyhedron(
    problem: ParametricProblem, base: BasePoint, x_star, acq: AcqReport | None = None
) -> MultiplierPolyhedron:
    """``{lambda : -x* = sum_i lambda_i grad_x g_i, complementary, >= 0}``."""
    x_star = vec(x_star)
    if acq is None:
        acq = acq_check(problem, base)
    if not acq.holds:
        raise ACQRequired("the Abadie qualification fails at the base point")
    grads, exact = _finite_gradients(problem, base)
    m = len(grads)
    n_p = problem.n_p
    gradients_p = tuple(g[:n_p] for g, _, _ in grads)
    gradients_x = tuple(g[n_p:] for g, _, _ in grads)
    # Equality block: sum_i lambda_i grad_x g_i = -x*.
    eq = tuple(
        tuple(gradients_x[i][j] for i in range(m)) for j in range(problem.n_x)
    )
    eq_rhs = vneg(x_star)
    ineq, ineq_rhs, extra_eq, extra_rhs = [], [], [], []
    for i, (_, rel, active) in enumerate(grads):
        if rel == "le":
            row = tuple(-ONE if k == i else ZERO for k in range(m))
            ineq.append(row)
            ineq_rhs.append(ZERO)
            if not active:
                pin = tuple(ONE if k == i else ZERO for k in range(m))
                extra_eq.append(pin)
                extra_rhs.append(ZERO)
    poly = HPolyhedron(
        m,
        tuple(ineq),
        tuple(ineq_rhs),
        eq + tuple(extra_eq),
        eq_rhs + tuple(extra_rhs),
    )
    return MultiplierPolyhedron(poly, gradients_p, gradients_x, x_star, exact and acq.exact)


def image_p_star(multipliers: MultiplierPolyhedron) -> CoderivSet:
    """Push the multiplier polyhedron through the parameter gradients."""
    m = len(multipliers.gradients_p)
    n_p = len(multipliers.gradients_p[0]) if m else 0
    lam = multipliers.polyhedron
    # Variables (u, lambda): u = sum_i lambda_i grad_p g_i.
    eq_rows = []
    eq_rhs = []
    for j in range(n_p):
        row = tuple(ONE if k == j else ZERO for k in range(n_p)) + tuple(
            -multipliers.gradients_p[i][j] for i in range(m)
        )
        eq_rows.append(row)
        eq_rhs.append(ZERO)
    for row, d in zip(lam.eq_matrix, lam.eq_rhs):
        eq_rows.append(zeros(n_p) + row)
        eq_rhs.append(d)
    ineq_rows = tuple(zeros(n_p) + row for row in lam.ineq_matrix)
    lifted = HPolyhedron(
        n_p + m, ineq_rows, lam.ineq_rhs, tuple(eq_rows), tuple(eq_rhs)
    )
    poly = project(lifted, range(n_p))
    return CoderivSet(
        poly,
        multipliers.query,
        "lagrange-multipliers",
        multipliers.exact,
        0.0 if multipliers.exact else 1e-9,
    )


# ---------------------------------------------------------------------------
# Basic constraint qualification for interval families
# ---------------------------------------------------------------------------


def _family_gradient(cons: SemiInfiniteConstraints, t) -> Vec:
    tq = rat(t)
    return tuple(poly_eval(poly, tq) for poly in cons.p_polys) + tuple(
        poly_eval(poly, tq) for poly in cons.x_polys
    )


def bcq_cone(problem: ParametricProblem, base: BasePoint) -> PolyCone:
    """Convex cone of active-index gradients.

    Interval-active families contribute the endpoint gradients of each
    active subinterval; quadratic coefficient polynomials additionally
    contribute their interior critical-index gradients so the curved
    gradient arc stays inside the hull.  Affine systems contribute the
    gradients of their active rows directly.
    """
    cons = problem.constraints
    n = problem.n_p + problem.n_x
    act = active_set(problem, base)
    gens: list[Vec] = []
    if isinstance(cons, SemiInfiniteConstraints):
        for (lo, hi) in act.intervals:
            gens.append(_family_gradient(cons, lo))
            gens.append(_family_gradient(cons, hi))
            if cons.degree() >= 2:
                for poly in (*cons.p_polys, *cons.x_polys):
                    if len(poly) == 3 and poly[2] != 0:
                        t_crit = -poly[1] / (2 * poly[2])
                        if lo < t_crit < hi:
                            gens.append(_family_gradient(cons, t_crit))
        for t in act.points:
            gens.append(_family_gradient(cons, t))
        for t in act.float_points:
            gens.append(_family_gradient(cons, rat(t)))
    elif isinstance(cons, AffineConstraints):
        for i in act.indices:
            row = cons.rows[i]
            grad = row.p_coef + row.x_coef
            gens.append(grad)
            if row.rel == "eq":
                gens.append(vneg(grad))
    else:
        raise UnsupportedConstraintKind(type(cons).__name__)
    return PolyCone.from_generators(gens, dim=n)


def bcq_check(problem: ParametricProblem, base: BasePoint) -> bool:
    """Graph normal cone covered by the active-gradient cone."""
    cone = bcq_cone(problem, base)
    normals = normal_cone(graph_polyhedron(problem), tuple(base.p) + tuple(base.x))
    return cone_contains(cone, normals)


def semi_infinite_frontier_coderivative(
    problem: ParametricProblem,
    base: BasePoint,
    y_star,
    certificate=None,
    qual: QualReport | None = None,
) -> CoderivSet:
    """Frontier-profile coderivative through the active-gradient cone.

    Slices the BCQ cone at the scalarized objective gradient and shifts
    by its parameter part; must agree with the graph-slice route
    wherever both apply.
    """
    y_star = vec(y_star)
    if not problem.cone.dual.contains(y_star):
        return CoderivSet(
            HPolyhedron.empty(problem.n_p), y_star, "dual-cone-gate", True, 0.0
        )
    if not bcq_check(problem, base):
        raise BCQRequired("the basic constraint qualification fails at the base point")
    if qual is None:
        qual = qualification_check(problem, base)
    if not qual.holds:
        raise QualificationFailed(qual)
    if certificate is None:
        from .domination import check_domination

        certificate = check_domination(problem, base.p, variant="min")
    if not certificate.holds_empirically:
        raise DominationNotCertified(
            f"domination fails empirically with {len(certificate.violations)} violations"
        )
    pairs, exact = scalar_subdifferential(problem, base, y_star)
    (p0, x0), = pairs
    cone_h = bcq_cone(problem, base).halfspaces()
    # {u : (u, -x0) in bcq cone} then shift by p0.
    ineq, rhs, eq, eq_rhs = [], [], [], []
    n_p = problem.n_p
    for row, b in zip(cone_h.ineq_matrix, cone_h.ineq_rhs):
        ineq.append(row[:n_p])
        rhs.append(b + dot(row[n_p:], x0))
    for row, d in zip(cone_h.eq_matrix, cone_h.eq_rhs):
        eq.append(row[:n_p])
        eq_rhs.append(d + dot(row[n_p:], x0))
    sliced = HPolyhedron(n_p, tuple(ineq), tuple(rhs), tuple(eq), tuple(eq_rhs))
    poly = sliced.translate(p0).canonical()
    return CoderivSet(
        poly,
        y_star,
        "semi-infinite-multipliers",
        exact,
        0.0 if exact else 1e-9,
    )
