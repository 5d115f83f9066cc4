"""Coderivative calculus for polyhedral set-valued maps and the
closed-form sensitivity formulas for parametric vector problems.

The central primitive is the graph slice

    D*H(x, y)(y*) = {x* : (x*, -y*) in N((x, y), gph H)},

computed exactly from the normal cone of the graph polyhedron.  On top
of it sit the pairing, chain and sum rules for convex polyhedral maps,
and the profile formula

    D*(F+K)(p, y)(y*) = grad_p<y*, f> + D*C(p, x)(grad_x<y*, f>)

valid under two closed-subspace qualification conditions; the same
value equals the Fréchet coderivative of the efficient-frontier profile
map once a domination certificate is in hand, with the weak variant
swapping in the auxiliary interior cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import (
    BasePointNotOnGraph,
    DominationNotCertified,
    MissingTildeCone,
    NoFeasibleSplit,
    NoIntermediatePoint,
    QualificationFailed,
    SubspaceConditionFailed,
)
from .geometry import (
    HPolyhedron,
    OrderCone,
    PolyCone,
    canonical_point,
    cone_hull,
    is_linear_subspace,
    lp_feasible,
    minkowski_sum,
    normal_cone,
    project,
    solve_lp,
    vertices,
)
from .problems import (
    BasePoint,
    ParametricProblem,
    check_solution_point,
    graph_polyhedron,
    objective_jacobians,
)
from .rationals import Matrix, ONE, Vec, ZERO, dot, mat, mat_t_vec, vec, vneg, zeros


# ---------------------------------------------------------------------------
# Result containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoderivSet:
    """A coderivative value: a polyhedron in the input-dual space.

    Emptiness is meaningful (the query functional lies outside the dual
    cone, or no multipliers exist).  ``exact`` is false when builtin
    float gradients entered the computation, in which case ``tolerance``
    bounds the rounding of the rationalized data.
    """

    polyhedron: HPolyhedron
    query: Vec
    provenance: str
    exact: bool = True
    tolerance: float = 0.0

    def is_empty(self) -> bool:
        return not lp_feasible(self.polyhedron)

    def contains(self, point) -> bool:
        return self.polyhedron.contains(point)

    def extreme_points(self) -> list[Vec]:
        return vertices(self.polyhedron)

    def scaled(self, factor) -> "CoderivSet":
        return CoderivSet(
            self.polyhedron.scaled(factor),
            self.query,
            self.provenance,
            self.exact,
            self.tolerance,
        )


@dataclass(frozen=True)
class QualReport:
    """Outcome of the two closed-subspace qualification conditions."""

    condition_i_holds: bool
    condition_i_cone: PolyCone | None
    condition_ii_holds: bool
    condition_ii_cone: PolyCone | None
    domination: object = None

    @property
    def holds(self) -> bool:
        return self.condition_i_holds and self.condition_ii_holds


# ---------------------------------------------------------------------------
# Polyhedral set-valued maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMap:
    """A set-valued map represented by its graph polyhedron."""

    graph: HPolyhedron
    n_in: int
    n_out: int

    def __post_init__(self):
        if self.graph.dim != self.n_in + self.n_out:
            raise ValueError("graph dimension must equal n_in + n_out")

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        eq = tuple(
            tuple(
                (ONE if j == i else ZERO) if j < n else (-ONE if j == n + i else ZERO)
                for j in range(2 * n)
            )
            for i in range(n)
        )
        return cls(HPolyhedron(2 * n, (), (), eq, zeros(n)), n, n)

    @classmethod
    def from_affine(cls, matrix, offset=None) -> "PolyMap":
        m = mat(matrix)
        k = len(m)
        n = len(m[0]) if m else 0
        c = vec(offset) if offset is not None else zeros(k)
        eq = tuple(
            vneg(m[i]) + tuple(ONE if j == i else ZERO for j in range(k))
            for i in range(k)
        )
        return cls(HPolyhedron(n + k, (), (), eq, c), n, k)

    @classmethod
    def constant_cone(cls, n_in: int, cone: PolyCone) -> "PolyMap":
        graph = HPolyhedron.full_space(n_in).product(cone.halfspaces())
        return cls(graph, n_in, cone.dim)

    @classmethod
    def from_graph(cls, graph: HPolyhedron, n_in: int) -> "PolyMap":
        return cls(graph, n_in, graph.dim - n_in)

    def contains(self, x, y) -> bool:
        return self.graph.contains(vec(x) + vec(y))

    def domain(self) -> HPolyhedron:
        return project(self.graph, range(self.n_in))


def affine_profile_map(matrix, offset, cone: OrderCone | PolyCone) -> PolyMap:
    """Profile of a single-valued affine map: graph is its epigraph
    ``{(z, y) : y - (M z + c) in K}``."""
    m = mat(matrix)
    k = len(m)
    n = len(m[0]) if m else 0
    c = vec(offset) if offset is not None else zeros(k)
    kcone = cone.cone if isinstance(cone, OrderCone) else cone
    h = kcone.halfspaces()
    ineq, rhs = [], []
    for row, b in zip(h.ineq_matrix, h.ineq_rhs):
        # row . (y - M z - c) <= b
        ineq.append(vneg(mat_t_vec(m, row)) + row)
        rhs.append(b + dot(row, c))
    eq, eq_rhs = [], []
    for row, d in zip(h.eq_matrix, h.eq_rhs):
        eq.append(vneg(mat_t_vec(m, row)) + row)
        eq_rhs.append(d + dot(row, c))
    return PolyMap(
        HPolyhedron(n + k, tuple(ineq), tuple(rhs), tuple(eq), tuple(eq_rhs)), n, k
    )


def paired_map(first: PolyMap, second: PolyMap) -> PolyMap:
    """``x -> (H1(x), H2(x))`` built directly on the shared input."""
    if first.n_in != second.n_in:
        raise ValueError("paired maps must share the input space")
    n = first.n_in
    k1, k2 = first.n_out, second.n_out

    def embed(graph: HPolyhedron, first_block: bool):
        rows = []
        for row in graph.ineq_matrix + graph.eq_matrix:
            xpart, ypart = row[:n], row[n:]
            if first_block:
                rows.append(xpart + ypart + zeros(k2))
            else:
                rows.append(xpart + zeros(k1) + ypart)
        ni = len(graph.ineq_matrix)
        return tuple(rows[:ni]), tuple(rows[ni:])

    i1, e1 = embed(first.graph, True)
    i2, e2 = embed(second.graph, False)
    graph = HPolyhedron(
        n + k1 + k2,
        i1 + i2,
        first.graph.ineq_rhs + second.graph.ineq_rhs,
        e1 + e2,
        first.graph.eq_rhs + second.graph.eq_rhs,
    )
    return PolyMap(graph, n, k1 + k2)


def composed_map(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """Graph of ``outer ∘ inner`` by eliminating the intermediate block."""
    if inner.n_out != outer.n_in:
        raise ValueError("inner output space must match outer input space")
    n, mid, k = inner.n_in, inner.n_out, outer.n_out
    # Variables (x, z, y): inner rows on (x, y), outer rows on (y, z).
    ineq, rhs, eq, eq_rhs = [], [], [], []
    for row, b in zip(inner.graph.ineq_matrix, inner.graph.ineq_rhs):
        ineq.append(row[:n] + zeros(k) + row[n:])
        rhs.append(b)
    for row, d in zip(inner.graph.eq_matrix, inner.graph.eq_rhs):
        eq.append(row[:n] + zeros(k) + row[n:])
        eq_rhs.append(d)
    for row, b in zip(outer.graph.ineq_matrix, outer.graph.ineq_rhs):
        ineq.append(zeros(n) + row[mid:] + row[:mid])
        rhs.append(b)
    for row, d in zip(outer.graph.eq_matrix, outer.graph.eq_rhs):
        eq.append(zeros(n) + row[mid:] + row[:mid])
        eq_rhs.append(d)
    lifted = HPolyhedron(n + k + mid, tuple(ineq), tuple(rhs), tuple(eq), tuple(eq_rhs))
    graph = project(lifted, range(n + k))
    return PolyMap(graph, n, k)


def summed_map(first: PolyMap, second: PolyMap) -> PolyMap:
    """Graph of ``x -> H(x) + L(x)`` by eliminating one summand."""
    if first.n_in != second.n_in or first.n_out != second.n_out:
        raise ValueError("summed maps must share both spaces")
    n, k = first.n_in, first.n_out
    # Variables (x, y, y1): first rows on (x, y1), second rows on (x, y - y1).
    ineq, rhs, eq, eq_rhs = [], [], [], []
    for row, b in zip(first.graph.ineq_matrix, first.graph.ineq_rhs):
        ineq.append(row[:n] + zeros(k) + row[n:])
        rhs.append(b)
    for row, d in zip(first.graph.eq_matrix, first.graph.eq_rhs):
        eq.append(row[:n] + zeros(k) + row[n:])
        eq_rhs.append(d)
    for row, b in zip(second.graph.ineq_matrix, second.graph.ineq_rhs):
        ineq.append(row[:n] + row[n:] + vneg(row[n:]))
        rhs.append(b)
    for row, d in zip(second.graph.eq_matrix, second.graph.eq_rhs):
        eq.append(row[:n] + row[n:] + vneg(row[n:]))
        eq_rhs.append(d)
    lifted = HPolyhedron(n + 2 * k, tuple(ineq), tuple(rhs), tuple(eq), tuple(eq_rhs))
    graph = project(lifted, range(n + k))
    return PolyMap(graph, n, k)


# ---------------------------------------------------------------------------
# Graph-slice coderivative
# ---------------------------------------------------------------------------


def _substitute_block(h: HPolyhedron, n_keep: int, fixed: Vec) -> HPolyhedron:
    """Substitute the trailing block of coordinates by fixed values."""
    ineq, rhs, eq, eq_rhs = [], [], [], []
    for row, b in zip(h.ineq_matrix, h.ineq_rhs):
        ineq.append(row[:n_keep])
        rhs.append(b - dot(row[n_keep:], fixed))
    for row, d in zip(h.eq_matrix, h.eq_rhs):
        eq.append(row[:n_keep])
        eq_rhs.append(d - dot(row[n_keep:], fixed))
    return HPolyhedron(
        n_keep, tuple(ineq), tuple(rhs), tuple(eq), tuple(eq_rhs)
    ).canonical()


def map_coderivative(pm: PolyMap, x_bar, y_bar, y_star) -> HPolyhedron:
    """``{x* : (x*, -y*) in N((x, y), gph H)}`` as an exact polyhedron."""
    x_bar, y_bar, y_star = vec(x_bar), vec(y_bar), vec(y_star)
    point = x_bar + y_bar
    if not pm.graph.contains(point):
        raise BasePointNotOnGraph(f"({x_bar}, {y_bar}) is not on the graph")
    normals = normal_cone(pm.graph, point)
    h = normals.halfspaces()
    return _substitute_block(h, pm.n_in, vneg(y_star))


# ---------------------------------------------------------------------------
# Calculus rules
# ---------------------------------------------------------------------------


def pair_coderivative(first: PolyMap, second: PolyMap, x_bar, y_bars, y_stars) -> HPolyhedron:
    """Coderivative of ``x -> (H1(x), H2(x))`` as the sum of the parts."""
    y1, y2 = y_bars
    s1, s2 = y_stars
    d1 = map_coderivative(first, x_bar, y1, s1)
    d2 = map_coderivative(second, x_bar, y2, s2)
    return minkowski_sum(d1, d2)


def chain_coderivative(
    outer: PolyMap, inner: PolyMap, x_bar, z_bar, z_star, intermediate=None
) -> HPolyhedron:
    """Coderivative of ``outer ∘ inner`` via the intermediate-dual union,
    realized as the projection of a lifted polyhedron."""
    x_bar, z_bar, z_star = vec(x_bar), vec(z_bar), vec(z_star)
    n, mid = inner.n_in, inner.n_out
    if intermediate is None:
        # Feasible intermediate values: y with (x, y) in gph inner and
        # (y, z) in gph outer; the canonical representative keeps runs
        # deterministic.
        rows, rhs, eq, eq_rhs = [], [], [], []
        for row, b in zip(inner.graph.ineq_matrix, inner.graph.ineq_rhs):
            rows.append(row[n:])
            rhs.append(b - dot(row[:n], x_bar))
        for row, d in zip(inner.graph.eq_matrix, inner.graph.eq_rhs):
            eq.append(row[n:])
            eq_rhs.append(d - dot(row[:n], x_bar))
        for row, b in zip(outer.graph.ineq_matrix, outer.graph.ineq_rhs):
            rows.append(row[:mid])
            rhs.append(b - dot(row[mid:], z_bar))
        for row, d in zip(outer.graph.eq_matrix, outer.graph.eq_rhs):
            eq.append(row[:mid])
            eq_rhs.append(d - dot(row[mid:], z_bar))
        feas = HPolyhedron(mid, tuple(rows), tuple(rhs), tuple(eq), tuple(eq_rhs))
        intermediate = canonical_point(feas)
        if intermediate is None:
            raise NoIntermediatePoint(
                "no intermediate value connects the base pair through the maps"
            )
    y_bar = vec(intermediate)
    n_outer = normal_cone(outer.graph, y_bar + z_bar).halfspaces()
    n_inner = normal_cone(inner.graph, x_bar + y_bar).halfspaces()
    # Lifted variables (x*, y*); project onto x*.
    outer_slice = _substitute_block(n_outer, mid, vneg(z_star))
    ineq, rhs, eq, eq_rhs = [], [], [], []
    for row, b in zip(outer_slice.ineq_matrix, outer_slice.ineq_rhs):
        ineq.append(zeros(n) + row)
        rhs.append(b)
    for row, d in zip(outer_slice.eq_matrix, outer_slice.eq_rhs):
        eq.append(zeros(n) + row)
        eq_rhs.append(d)
    for row, b in zip(n_inner.ineq_matrix, n_inner.ineq_rhs):
        # (x*, -y*) in N_inner: flip the sign of the y* block.
        ineq.append(row[:n] + vneg(row[n:]))
        rhs.append(b)
    for row, d in zip(n_inner.eq_matrix, n_inner.eq_rhs):
        eq.append(row[:n] + vneg(row[n:]))
        eq_rhs.append(d)
    lifted = HPolyhedron(n + mid, tuple(ineq), tuple(rhs), tuple(eq), tuple(eq_rhs))
    return project(lifted, range(n))


def sum_coderivative(
    first: PolyMap, second: PolyMap, x_bar, y_bar, y_star, split=None
) -> HPolyhedron:
    """Coderivative of ``H + L`` as the Minkowski sum at a feasible split."""
    x_bar, y_bar, y_star = vec(x_bar), vec(y_bar), vec(y_star)
    n, k = first.n_in, first.n_out
    dom_diff = minkowski_sum(first.domain(), second.domain().negated())
    if not is_linear_subspace(cone_hull(dom_diff)):
        raise SubspaceConditionFailed(
            "cone hull of the domain difference is not a subspace"
        )
    if split is None:
        rows, rhs, eq, eq_rhs = [], [], [], []
        for row, b in zip(first.graph.ineq_matrix, first.graph.ineq_rhs):
            rows.append(row[n:])
            rhs.append(b - dot(row[:n], x_bar))
        for row, d in zip(first.graph.eq_matrix, first.graph.eq_rhs):
            eq.append(row[n:])
            eq_rhs.append(d - dot(row[:n], x_bar))
        for row, b in zip(second.graph.ineq_matrix, second.graph.ineq_rhs):
            rows.append(vneg(row[n:]))
            rhs.append(b - dot(row[:n], x_bar) - dot(row[n:], y_bar))
        for row, d in zip(second.graph.eq_matrix, second.graph.eq_rhs):
            eq.append(vneg(row[n:]))
            eq_rhs.append(d - dot(row[:n], x_bar) - dot(row[n:], y_bar))
        feas = HPolyhedron(k, tuple(rows), tuple(rhs), tuple(eq), tuple(eq_rhs))
        y1 = canonical_point(feas)
        if y1 is None:
            raise NoFeasibleSplit("the base value admits no split across the maps")
    else:
        y1 = vec(split)
    y2 = tuple(a - b for a, b in zip(y_bar, y1))
    d1 = map_coderivative(first, x_bar, y1, y_star)
    d2 = map_coderivative(second, x_bar, y2, y_star)
    return minkowski_sum(d1, d2)


# ---------------------------------------------------------------------------
# Problem-level formulas
# ---------------------------------------------------------------------------


def scalar_subdifferential(problem: ParametricProblem, base: BasePoint, y_star):
    """Gradient pair of the scalarized objective at the base point.

    For the smooth objective kinds this is the singleton
    ``(J_p' y*, J_x' y*)``; the boolean flags exactness of the data.
    """
    y_star = vec(y_star)
    jp, jx, exact = objective_jacobians(problem, base.p, base.x)
    p_star = mat_t_vec(jp, y_star)
    x_star = mat_t_vec(jx, y_star)
    return [(p_star, x_star)], exact


def coderivative_constraint(problem: ParametricProblem, base: BasePoint, x_star) -> CoderivSet:
    """``D*C(p, x)(x*)`` from the normal cone of the constraint graph."""
    x_star = vec(x_star)
    gph = graph_polyhedron(problem)
    point = tuple(base.p) + tuple(base.x)
    if not gph.contains(point):
        raise BasePointNotOnGraph("base point is not on the constraint graph")
    normals = normal_cone(gph, point).halfspaces()
    poly = _substitute_block(normals, problem.n_p, vneg(x_star))
    return CoderivSet(poly, x_star, "constraint-graph-normal-cone")


def qualification_check(problem: ParametricProblem, base: BasePoint | None = None) -> QualReport:
    """Both closed-subspace conditions, computed explicitly.

    For everywhere-defined objectives over a nonempty constraint graph
    the cones span the full spaces; they are computed anyway and the
    report carries them.
    """
    try:
        gph = graph_polyhedron(problem)
    except Exception:
        return QualReport(False, None, False, None)
    n = problem.n_p + problem.n_x
    dom_f = HPolyhedron.full_space(n)  # shipped objective kinds are total
    if not lp_feasible(gph):
        return QualReport(False, None, False, None)
    diff_i = minkowski_sum(gph, dom_f.negated())
    cone_i = cone_hull(diff_i)
    holds_i = is_linear_subspace(cone_i)
    dom_c = project(gph, range(problem.n_p))
    diff_ii = minkowski_sum(HPolyhedron.full_space(problem.n_p), dom_c.negated())
    cone_ii = cone_hull(diff_ii)
    holds_ii = is_linear_subspace(cone_ii)
    return QualReport(holds_i, cone_i, holds_ii, cone_ii)


def profile_coderivative_F(
    problem: ParametricProblem,
    base: BasePoint,
    y_star,
    order_cone: OrderCone | None = None,
    qual: QualReport | None = None,
) -> CoderivSet:
    """Coderivative of the attainable-set profile map at the base point.

    Functionals outside the dual cone give the empty set (epigraph
    normals force dual membership); otherwise the value is the gradient
    shift of the constraint coderivative.
    """
    y_star = vec(y_star)
    cone = order_cone if order_cone is not None else problem.cone
    if not cone.dual.contains(y_star):
        return CoderivSet(
            HPolyhedron.empty(problem.n_p), y_star, "dual-cone-gate", True, 0.0
        )
    if qual is None:
        qual = qualification_check(problem, base)
    if not qual.holds:
        raise QualificationFailed(qual)
    pairs, exact = scalar_subdifferential(problem, base, y_star)
    (p0, x0), = pairs
    inner = coderivative_constraint(problem, base, x0)
    poly = inner.polyhedron.translate(p0).canonical()
    return CoderivSet(
        poly,
        y_star,
        "profile-objective-chain",
        exact,
        0.0 if exact else 1e-9,
    )


def frontier_coderivative(
    problem: ParametricProblem,
    base: BasePoint,
    y_star,
    variant: str = "min",
    certificate=None,
    qual: QualReport | None = None,
    check_base: bool = True,
) -> CoderivSet:
    """Fréchet coderivative of the chosen frontier profile map.

    The value is the profile formula; what the variant changes is the
    hypothesis trail: a passing domination certificate for the frontier
    map at hand, and for the weak variant the auxiliary cone replacing
    the order cone inside the scalarization gate.
    """
    if variant not in ("min", "weak", "proper"):
        raise ValueError(f"unknown variant {variant!r}")
    y_star = vec(y_star)
    cone = problem.cone
    if variant == "weak":
        if problem.cone_tilde is None:
            raise MissingTildeCone("the weak variant needs cone_tilde in the problem")
        cone = problem.cone_tilde
    if certificate is None:
        from .domination import check_domination

        certificate = check_domination(problem, base.p, variant=variant)
    if certificate.variant != variant:
        raise DominationNotCertified(
            f"certificate covers variant {certificate.variant!r}, not {variant!r}"
        )
    if not certificate.holds_empirically:
        raise DominationNotCertified(
            f"domination fails empirically with {len(certificate.violations)} violations"
        )
    if check_base:
        check_solution_point(problem, base.p, base.x, variant=variant)
    result = profile_coderivative_F(problem, base, y_star, order_cone=cone, qual=qual)
    return CoderivSet(
        result.polyhedron,
        y_star,
        f"frontier-{variant}",
        result.exact,
        result.tolerance,
    )
