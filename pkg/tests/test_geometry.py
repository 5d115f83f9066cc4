import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from vopsens.errors import PointNotInSet
from vopsens.geometry import (
    HPolyhedron,
    OrderCone,
    PolyCone,
    bounding_box,
    cone_contains,
    cone_equal,
    cone_hull,
    is_linear_subspace,
    is_member,
    lineality,
    lp_feasible,
    minkowski_sum,
    negative_polar,
    normal_cone,
    polar_cone,
    poly_contains,
    poly_equal,
    project,
    tangent_cone,
    vertices,
)
from vopsens.rationals import dot, vec


def orthant_poly(n=2):
    rows = [tuple(F(-1) if j == i else F(0) for j in range(n)) for i in range(n)]
    return HPolyhedron.from_system(ineq=rows, ineq_rhs=[0] * n)


def unit_square():
    return HPolyhedron.from_box([(0, 1), (0, 1)])


# --- polar cones -------------------------------------------------------------


def test_polar_orthant_self_dual():
    orthant = PolyCone.from_generators([[1, 0], [0, 1]])
    assert cone_equal(polar_cone(orthant), orthant)


def test_polar_of_full_space_is_origin():
    full = PolyCone.full(2)
    polar = polar_cone(full)
    assert polar.generators() == ()
    assert polar.contains((0, 0))
    assert not polar.contains((1, 0))


def _rays_by_angle_sweep(generators):
    """Independent 2D oracle: sweep directions, mark feasibility of the
    polar inequality system, extract the boundary rays of the feasible
    angular sector."""
    angles = [2 * math.pi * k / 720 for k in range(720)]
    feas = []
    for a in angles:
        d = (math.cos(a), math.sin(a))
        feas.append(all(d[0] * g[0] + d[1] * g[1] >= -1e-12 for g in generators))
    edges = []
    for k in range(720):
        if feas[k] and not feas[(k - 1) % 720]:
            edges.append(angles[k])
        if feas[k] and not feas[(k + 1) % 720]:
            edges.append(angles[k])
    return edges


def test_polar_matches_angle_sweep_oracle():
    gens = [(1, 0), (1, 1)]
    polar = polar_cone(PolyCone.from_generators(gens))
    expected = PolyCone.from_generators([[0, 1], [1, -1]])
    assert cone_equal(polar, expected)
    # Each oracle boundary direction is a positive multiple of a computed
    # generator; each computed generator pairs nonnegatively with the input.
    for angle in _rays_by_angle_sweep(gens):
        d = (math.cos(angle), math.sin(angle))
        matched = False
        for g in polar.generators():
            gf = (float(g[0]), float(g[1]))
            norm = math.hypot(*gf)
            if abs(d[0] * gf[1] - d[1] * gf[0]) < 1e-2 * norm and (
                d[0] * gf[0] + d[1] * gf[1] > 0
            ):
                matched = True
        assert matched
    for g in polar.generators():
        for base in gens:
            assert dot(vec(g), vec(base)) >= 0


@st.composite
def pointed_cones(draw):
    dim = draw(st.integers(2, 3))
    count = draw(st.integers(1, 4))
    gens = []
    for _ in range(count):
        head = draw(st.integers(1, 4))
        tail = [draw(st.integers(-4, 4)) for _ in range(dim - 1)]
        gens.append((head, *tail))
    return PolyCone.from_generators(gens, dim=dim)


@given(pointed_cones())
@settings(max_examples=60, deadline=None)
def test_polar_involution(cone):
    # First coordinate positive on every generator forces pointedness.
    assert cone_equal(polar_cone(polar_cone(cone)), cone)


def test_negative_polar_is_sign_flip():
    cone = PolyCone.from_generators([[1, 0], [0, 1]])
    neg = negative_polar(cone)
    assert neg.contains((-1, -1))
    assert not neg.contains((1, 0))


# --- tangent and normal cones ---------------------------------------------------


def test_tangent_interior_is_full_space():
    t = tangent_cone(orthant_poly(), (1, 1))
    assert is_linear_subspace(t)
    assert t.contains((-5, 7))


def test_tangent_at_origin_is_orthant():
    t = tangent_cone(orthant_poly(), (0, 0))
    assert t.contains((1, 0)) and t.contains((0, 1))
    assert not t.contains((-1, 0))


def test_tangent_point_not_in_set():
    with pytest.raises(PointNotInSet):
        tangent_cone(orthant_poly(), (-1, 0))


def test_normal_orthant_origin():
    n = normal_cone(orthant_poly(), (0, 0))
    assert cone_equal(n, PolyCone.from_generators([[-1, 0], [0, -1]]))


def test_normal_is_negative_polar_of_tangent():
    poly = unit_square().intersect(
        HPolyhedron.from_system(ineq=[[1, 1]], ineq_rhs=[1])
    )
    for point in [(0, 0), (1, 0), (0, 1), (F(1, 2), F(1, 2)), (F(1, 4), F(1, 4))]:
        if not poly.contains(point):
            continue
        t = tangent_cone(poly, point)
        n = normal_cone(poly, point)
        assert cone_equal(n, negative_polar(t))


def test_linear_frontier_graph_cones(linear_frontier_problem):
    from vopsens.problems import graph_polyhedron

    gph = graph_polyhedron(linear_frontier_problem)
    origin = (0, 0, 0, 0)
    t = tangent_cone(gph, origin)
    # Directions (p, v) with v >= p1 + 2 p2 + p3.
    assert t.contains((1, 0, 0, 2))
    assert not t.contains((1, 0, 0, 0))
    n = normal_cone(gph, origin)
    assert cone_equal(n, PolyCone.from_generators([[1, 2, 1, -1]]))


def test_interval_family_graph_normal_cone(interval_family_problem):
    from vopsens.problems import graph_polyhedron

    gph = graph_polyhedron(interval_family_problem)
    n = normal_cone(gph, (0, 0, 0))
    assert cone_equal(
        n, PolyCone.from_generators([[0, -1, 0], [0, 0, -1]])
    )


# --- projection -------------------------------------------------------------------


def test_project_unit_square_to_segment():
    proj = project(unit_square(), [0])
    assert poly_equal(proj, HPolyhedron.from_box([(0, 1)]))


def test_project_simplex():
    poly = HPolyhedron.from_system(
        ineq=[[1, 1], [-1, 0], [0, -1]], ineq_rhs=[1, 0, 0]
    )
    assert poly_equal(project(poly, [0]), HPolyhedron.from_box([(0, 1)]))


def test_project_matches_membership_grid_oracle():
    # Random-ish 3D polytope; the projection indicator on a grid must
    # match existence of a lift checked by feasibility on the lifted system.
    poly = HPolyhedron.from_box([(-1, 1)] * 3).intersect(
        HPolyhedron.from_system(
            ineq=[[1, 1, 1], [1, -2, 0], [-1, 1, 3]], ineq_rhs=[1, 1, 2]
        )
    )
    shadow = project(poly, [0, 1])
    steps = 21
    for i in range(steps):
        for j in range(steps):
            gx = F(-1) + F(2 * i, steps - 1)
            gy = F(-1) + F(2 * j, steps - 1)
            lifted = poly.intersect(
                HPolyhedron.from_system(
                    eq=[[1, 0, 0], [0, 1, 0]], eq_rhs=[gx, gy], dim=3
                )
            )
            assert shadow.contains((gx, gy)) == lp_feasible(lifted)


def test_project_empty_stays_empty():
    empty = HPolyhedron.empty(3)
    assert not lp_feasible(project(empty, [0, 1]))


# --- feasibility and membership -------------------------------------------------


def test_lp_feasible_examples():
    bad = HPolyhedron.from_system(ineq=[[1], [-1]], ineq_rhs=[-1, 0])
    assert not lp_feasible(bad)
    assert is_member(orthant_poly(), (0, 0))


# --- subspaces, lineality, cone hull ----------------------------------------------


def test_is_linear_subspace_cases():
    assert is_linear_subspace(PolyCone.full(2))
    orthant = PolyCone.from_generators([[1, 0], [0, 1]])
    assert not is_linear_subspace(orthant)
    line = PolyCone.from_generators([[1, 0], [-1, 0]])
    assert is_linear_subspace(line)
    assert cone_equal(lineality(line), line)
    assert lineality(orthant).generators() == ()


def test_cone_hull_segment():
    seg = HPolyhedron.from_system(
        ineq=[[-1, 0], [1, 0]], ineq_rhs=[-1, 2], eq=[[1, -1]], eq_rhs=[0]
    )
    hull = cone_hull(seg)
    assert cone_equal(hull, PolyCone.from_generators([[1, 1]]))
    # Sampling check: every t * x with x in the segment stays inside.
    for t in (F(0), F(1, 3), F(2), F(7)):
        for x1 in (F(1), F(3, 2), F(2)):
            assert hull.contains((t * x1, t * x1))


def test_cone_hull_point():
    hull = cone_hull(HPolyhedron.singleton((1, 1)))
    assert cone_equal(hull, PolyCone.from_generators([[1, 1]]))


def test_cone_hull_of_zero_neighborhood_is_full():
    hull = cone_hull(HPolyhedron.from_box([(-1, 1), (-1, 1)]))
    assert is_linear_subspace(hull)
    assert hull.contains((13, -7))


def test_cone_hull_empty_raises():
    with pytest.raises(ValueError):
        cone_hull(HPolyhedron.empty(2))


# --- Minkowski sums, vertices, comparisons -------------------------------------------


def test_minkowski_sum_boxes():
    total = minkowski_sum(unit_square(), unit_square())
    assert poly_equal(total, HPolyhedron.from_box([(0, 2), (0, 2)]))


def test_vertices_of_clipped_square():
    poly = unit_square().intersect(
        HPolyhedron.from_system(ineq=[[1, 1]], ineq_rhs=["3/2"])
    )
    verts = vertices(poly)
    assert (F(1), F(1, 2)) in verts
    assert (F(1), F(1)) not in verts
    assert len(verts) == 5


def test_poly_contains_and_equal():
    small = unit_square()
    big = HPolyhedron.from_box([(-1, 2), (-1, 2)])
    assert poly_contains(big, small)
    assert not poly_contains(small, big)
    assert poly_equal(small, small.canonical())
    assert not poly_equal(small, big)
    assert poly_contains(small, HPolyhedron.empty(2))


def test_cone_contains():
    orthant = PolyCone.from_generators([[1, 0], [0, 1]])
    narrow = PolyCone.from_generators([[2, 1], [1, 2]])
    assert cone_contains(orthant, narrow)
    assert not cone_contains(narrow, orthant)


def test_bounding_box_with_clip():
    poly = HPolyhedron.from_system(ineq=[[-1, 0], [0, -1]], ineq_rhs=[0, 0])
    bb = bounding_box(poly, clip=(-10, 10))
    assert bb == [(F(0), F(10)), (F(0), F(10))]


# --- determinism --------------------------------------------------------------------


def test_canonical_representation_deterministic():
    rows = [[2, 4], [1, 2], [0, 1]]
    a = HPolyhedron.from_system(ineq=rows, ineq_rhs=[2, 1, 3]).canonical()
    b = HPolyhedron.from_system(ineq=rows[::-1], ineq_rhs=[3, 1, 2]).canonical()
    assert a == b
    assert len(a.ineq_matrix) == 2  # duplicate scaled row collapsed


def test_scaled_polyhedron():
    sq = unit_square()
    doubled = sq.scaled(2)
    assert poly_equal(doubled, HPolyhedron.from_box([(0, 2), (0, 2)]))
    flipped = sq.scaled(-1)
    assert poly_equal(flipped, HPolyhedron.from_box([(-1, 0), (-1, 0)]))


# --- order cones ---------------------------------------------------------------------


def test_order_cone_requires_pointed():
    from vopsens.errors import ConeDegenerate

    with pytest.raises(ConeDegenerate):
        OrderCone.from_generators([[1, 0], [-1, 0]])


def test_order_cone_dual_and_solidity():
    k = OrderCone.nonneg_orthant(2)
    assert k.is_solid
    assert k.dual.contains((3, 5))
    assert not k.dual.contains((-1, 0))
    assert k.interior_contains((1, 1))
    assert not k.interior_contains((1, 0))
    ray = OrderCone.from_generators([[1, 0]], dim=2)
    assert not ray.is_solid
    assert k.strictly_positive((1, 1))
    assert not k.strictly_positive((1, 0))


def test_order_cone_from_halfspaces():
    k = OrderCone.from_halfspaces([[1, 0], [0, 1]])
    assert cone_equal(k.cone, OrderCone.nonneg_orthant(2).cone)
