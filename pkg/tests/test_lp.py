from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from vopsens import lp
from vopsens.geometry import HPolyhedron, canonical_point, lp_feasible, solve_lp, vertices


def box(n, lo=0, hi=1):
    return HPolyhedron.from_box([(lo, hi)] * n)


def test_optimal_on_box():
    res = solve_lp(box(3), [1, 1, 1], maximize=True)
    assert res.status == lp.OPTIMAL
    assert res.value == 3
    assert res.point == (F(1), F(1), F(1))


def test_infeasible():
    poly = HPolyhedron.from_system(ineq=[[1], [-1]], ineq_rhs=[-1, 0])
    assert solve_lp(poly, [1]).status == lp.INFEASIBLE
    assert not lp_feasible(poly)


def test_unbounded():
    poly = HPolyhedron.from_system(ineq=[[-1]], ineq_rhs=[0])
    assert solve_lp(poly, [1], maximize=True).status == lp.UNBOUNDED


def test_equalities():
    poly = HPolyhedron.from_system(
        ineq=[[1, 0], [0, 1], [-1, 0], [0, -1]],
        ineq_rhs=[2, 2, 0, 0],
        eq=[[1, 1]],
        eq_rhs=[2],
    )
    res = solve_lp(poly, [1, 0], maximize=True)
    assert res.value == 2
    assert res.point == (F(2), F(0))


def test_degenerate_redundant_rows():
    poly = HPolyhedron.from_system(
        ineq=[[1], [1], [1]], ineq_rhs=[1, 1, 2], eq=[[0]], eq_rhs=[0]
    )
    res = solve_lp(poly, [1], maximize=True)
    assert res.status == lp.OPTIMAL
    assert res.value == 1


def test_exact_fractions():
    poly = HPolyhedron.from_system(ineq=[["1/3"], ["-1"]], ineq_rhs=["1/7", 0])
    res = solve_lp(poly, [1], maximize=True)
    assert res.value == F(3, 7)


def test_canonical_point_deterministic():
    poly = HPolyhedron.from_system(ineq=[[-1, -1]], ineq_rhs=[-1])
    p1 = canonical_point(poly)
    p2 = canonical_point(poly)
    assert p1 == p2
    assert poly.contains(p1)
    # Minimal L1 representative of {x1 + x2 >= 1} splits evenly.
    assert sum(map(abs, p1)) == 1


@st.composite
def bounded_polys(draw):
    n = draw(st.integers(2, 3))
    m = draw(st.integers(1, 4))
    rows = [
        tuple(F(draw(st.integers(-3, 3))) for _ in range(n)) for _ in range(m)
    ]
    rhs = [F(draw(st.integers(0, 5))) for _ in range(m)]  # keeps origin feasible
    poly = box(n, -2, 2).intersect(
        HPolyhedron.from_system(ineq=rows, ineq_rhs=rhs, dim=n)
    )
    cost = tuple(F(draw(st.integers(-3, 3))) for _ in range(n))
    return poly, cost


@given(bounded_polys())
@settings(max_examples=40, deadline=None)
def test_lp_matches_vertex_enumeration(case):
    poly, cost = case
    res = solve_lp(poly, cost, maximize=True)
    assert res.status == lp.OPTIMAL  # origin is feasible, box bounds it
    verts = vertices(poly)
    best = max(sum(c * v for c, v in zip(cost, vert)) for vert in verts)
    assert res.value == best
