from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from vopsens.efficiency import (
    default_weight_grid,
    frontier_sample,
    min_points,
    prmin_points,
    wmin_points,
)
from vopsens.errors import ConeNotSolid, EmptyCloud, UnboundedScalarization
from vopsens.geometry import OrderCone
from vopsens.problems import parse_problem

ORTHANT = OrderCone.nonneg_orthant(2)


def test_min_square_cloud():
    cloud = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert min_points(cloud, ORTHANT).indices == (0,)


def test_min_singleton():
    assert min_points([(3, 4)], ORTHANT).indices == (0,)


def test_min_of_diagonal_samples():
    # Samples of the kinked frontier instance at parameter one.
    cloud = [(1, 1), (1.5, 1.5), (2, 2)]
    assert min_points(cloud, ORTHANT).indices == (0,)


def test_min_empty_cloud_raises():
    with pytest.raises(EmptyCloud):
        min_points([], ORTHANT)


def test_wmin_antichain_keeps_all():
    cloud = [(0, 0), (0, 1), (1, 0)]
    assert wmin_points(cloud, ORTHANT).indices == (0, 1, 2)


def test_wmin_strict_domination():
    assert wmin_points([(0, 0), (1, 1)], ORTHANT).indices == (0,)


def test_wmin_contains_min():
    cloud = [(0, 2), (1, 1), (2, 0), (2, 2), (0, 2)]
    mins = set(min_points(cloud, ORTHANT).indices)
    weaks = set(wmin_points(cloud, ORTHANT).indices)
    assert mins <= weaks


def test_wmin_needs_solid_cone():
    ray = OrderCone.from_generators([[1, 0]], dim=2)
    with pytest.raises(ConeNotSolid):
        wmin_points([(0, 0)], ray)


def test_prmin_square_cloud_certificate():
    result = prmin_points([(0, 0), (1, 0), (0, 1), (1, 1)], ORTHANT)
    assert result.indices == (0,)
    w = result.certificates[0]
    assert all(c > 0 for c in w)


def test_prmin_singleton_frontier(linear_frontier_problem):
    cloud = frontier_sample(linear_frontier_problem, (1, 0, 0))
    result = prmin_points(cloud, ORTHANT)
    assert result.points(cloud) == [(F(1), F(2))]


def test_duplicates_all_reported():
    cloud = [(0, 0), (0, 0), (1, 1)]
    assert min_points(cloud, ORTHANT).indices == (0, 1)


@st.composite
def rational_clouds(draw):
    size = draw(st.integers(1, 40))
    return [
        (F(draw(st.integers(-20, 20)), 4), F(draw(st.integers(-20, 20)), 4))
        for _ in range(size)
    ]


@given(rational_clouds())
@settings(max_examples=60, deadline=None)
def test_inclusion_chain(cloud):
    pr = set(prmin_points(cloud, ORTHANT).indices)
    mi = set(min_points(cloud, ORTHANT).indices)
    wm = set(wmin_points(cloud, ORTHANT).indices)
    assert pr <= mi <= wm


@given(rational_clouds(), st.integers(0, 39), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_min_invariant_under_dominated_point(cloud, pick, raydir):
    pick = pick % len(cloud)
    shift = [(1, 0), (0, 1), (1, 1), (2, 3)][raydir]
    dominated = (cloud[pick][0] + shift[0], cloud[pick][1] + shift[1])
    base = min_points(cloud, ORTHANT)
    extended = min_points(cloud + [dominated], ORTHANT)
    assert set(base.indices) == set(i for i in extended.indices if i < len(cloud))
    assert len(cloud) not in extended.indices


def test_brute_force_agreement_200_points():
    import random

    from vopsens.oracle import brute_force_min

    rng = random.Random(7)
    cloud = [
        (F(rng.randint(-50, 50), 8), F(rng.randint(-50, 50), 8)) for _ in range(200)
    ]
    assert set(min_points(cloud, ORTHANT).indices) == set(
        brute_force_min(cloud, ORTHANT)
    )


# --- frontier sampling ------------------------------------------------------------


def test_frontier_linear_instance(linear_frontier_problem):
    cloud = frontier_sample(linear_frontier_problem, (1, 0, 0))
    assert cloud == [(F(1), F(2))]


def test_frontier_interval_instance(interval_family_problem):
    for p in [(0,), (1,), (-2,)]:
        assert frontier_sample(interval_family_problem, p) == [(F(2), F(3))]


def test_frontier_unbounded_scalarization():
    ray = parse_problem("ray_counterexample")
    with pytest.raises(UnboundedScalarization):
        frontier_sample(ray, (0,), weights=[(1, 1)])


def test_frontier_weights_validated(linear_frontier_problem):
    with pytest.raises(ValueError):
        frontier_sample(linear_frontier_problem, (0, 0, 0), weights=[(-1, 0)])


def test_frontier_pairwise_incomparable():
    # A genuinely two-dimensional frontier: minimize (x1, x2) over a
    # shifted simplex; interior weights must produce incomparable points.
    doc = {
        "dims": {"p": 1, "x": 2, "y": 2},
        "cone": {"generators": [["1", "0"], ["0", "1"]]},
        "objective": {
            "kind": "affine",
            "p_coef": [["0"], ["0"]],
            "x_coef": [["1", "0"], ["0", "1"]],
            "offset": ["0", "0"],
        },
        "constraints": {
            "kind": "affine",
            "rows": [
                {"p_coef": ["1"], "x_coef": ["-1", "-1"], "offset": "1", "rel": "le"},
                {"p_coef": ["0"], "x_coef": ["-1", "0"], "offset": "0", "rel": "le"},
                {"p_coef": ["0"], "x_coef": ["0", "-1"], "offset": "0", "rel": "le"},
            ],
        },
    }
    problem = parse_problem(doc)
    interior = [w for w in default_weight_grid(problem.cone, 21) if all(c > 0 for c in w)]
    cloud = frontier_sample(problem, (0,), weights=interior)
    assert len(cloud) > 1
    assert set(min_points(cloud, ORTHANT).indices) == set(range(len(cloud)))


def test_frontier_deterministic(linear_frontier_problem):
    a = frontier_sample(linear_frontier_problem, (1, 1, 1))
    b = frontier_sample(linear_frontier_problem, (1, 1, 1))
    assert a == b


def test_builtin_objective_grid_descent():
    kinked = parse_problem("example_2_1")
    cloud = frontier_sample(kinked, (1,), weight_count=5)
    assert len(cloud) == 1
    y = cloud[0]
    assert abs(float(y[0]) - 1.0) < 1e-6 and abs(float(y[1]) - 1.0) < 1e-6
