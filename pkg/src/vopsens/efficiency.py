"""Efficiency of point sets under an ordering cone, and frontier sampling.

Three nested notions are implemented for finite clouds: minimality
(no other point lies below along the cone), weak minimality (no point
strictly below through the cone interior), and proper minimality via a
strictly positive scalarization certificate.  The certificate route is
a sound sufficient test: a functional that is positive on the cone
minus the origin and minimized at the candidate exposes it through a
dilating halfspace cone.

``frontier_sample`` produces finite samples of the efficient frontier
of ``F(p) = f(p, C(p))`` by weighted-sum scalarization: exact rational
LPs on the affine path, grid-refinement descent for builtin smooth
objectives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import (
    ConeDegenerate,
    ConeNotSolid,
    EmptyCloud,
    Infeasible,
    UnboundedScalarization,
)
from .geometry import HPolyhedron, OrderCone, bounding_box, solve_lp
from .rationals import ONE, Vec, ZERO, dot, vec, vsub, zeros


@dataclass(frozen=True)
class EfficiencyResult:
    """Indices of efficient points within the original cloud.

    ``certificates`` is populated for the proper variant and maps each
    certified index to its strictly positive scalarization weight.
    """

    indices: tuple[int, ...]
    variant: str
    certificates: dict | None = None

    def points(self, cloud):
        return [cloud[i] for i in self.indices]


def _dedupe(cloud):
    """Exact deduplication; returns representatives and the groups they cover."""
    seen: dict[Vec, list[int]] = {}
    for i, point in enumerate(cloud):
        seen.setdefault(vec(point), []).append(i)
    reps = sorted(seen)
    return reps, seen


def min_points(cloud, cone: OrderCone) -> EfficiencyResult:
    """Points with nothing else below them along the ordering cone."""
    if not cloud:
        raise EmptyCloud("efficiency of an empty cloud is undefined")
    reps, groups = _dedupe(cloud)
    efficient: list[int] = []
    for a_bar in reps:
        dominated = any(
            other != a_bar and cone.contains(vsub(a_bar, other)) for other in reps
        )
        if not dominated:
            efficient.extend(groups[a_bar])
    return EfficiencyResult(tuple(sorted(efficient)), "min")


def wmin_points(cloud, cone: OrderCone) -> EfficiencyResult:
    """Points with nothing strictly below them through the cone interior."""
    if not cloud:
        raise EmptyCloud("efficiency of an empty cloud is undefined")
    if not cone.is_solid:
        raise ConeNotSolid("weak efficiency needs a solid ordering cone")
    reps, groups = _dedupe(cloud)
    efficient: list[int] = []
    for a_bar in reps:
        dominated = any(
            other != a_bar and cone.interior_contains(vsub(a_bar, other))
            for other in reps
        )
        if not dominated:
            efficient.extend(groups[a_bar])
    return EfficiencyResult(tuple(sorted(efficient)), "wmin")


def _certificate_weights(cone: OrderCone, count: int) -> list[Vec]:
    """Strictly interior dual functionals on a rational simplex grid."""
    rays = cone.dual_rays
    if not rays:
        return []
    if len(rays) == 1:
        return [rays[0]]
    weights = []
    if len(rays) == 2:
        for i in range(1, count + 1):
            s = Fraction(i, count + 1)
            w = tuple((1 - s) * a + s * b for a, b in zip(rays[0], rays[1]))
            weights.append(w)
    else:
        centroid = tuple(
            sum((r[j] for r in rays), ZERO) / len(rays) for j in range(cone.dim)
        )
        weights.append(centroid)
        for r in rays:
            weights.append(tuple((a + c) / 2 for a, c in zip(r, centroid)))
    return weights


def _refine_certificate(cone: OrderCone, reps, a_bar) -> Vec | None:
    """LP search for w = sum(mu_i * ray_i), mu >= 1, minimized at a_bar."""
    rays = cone.dual_rays
    if not rays:
        return None
    k = len(rays)
    ineq = []
    rhs = []
    for other in reps:
        diff = vsub(other, a_bar)
        row = tuple(-dot(r, diff) for r in rays)
        ineq.append(row)
        rhs.append(ZERO)
    for i in range(k):
        row = tuple(-ONE if j == i else ZERO for j in range(k))
        ineq.append(row)
        rhs.append(-ONE)
    poly = HPolyhedron(k, tuple(ineq), tuple(rhs), (), ())
    res = solve_lp(poly, zeros(k))
    if res.status != lp.OPTIMAL:
        return None
    mu = res.point
    return tuple(
        sum((mu[i] * rays[i][j] for i in range(k)), ZERO) for j in range(cone.dim)
    )


def prmin_points(cloud, cone: OrderCone, grid: int = 19) -> EfficiencyResult:
    """Properly efficient points, each with a scalarization certificate."""
    if not cloud:
        raise EmptyCloud("efficiency of an empty cloud is undefined")
    if not cone.dual_rays and cone.cone.generators():
        raise ConeDegenerate("dual cone has empty interior")
    reps, groups = _dedupe(cloud)
    weights = _certificate_weights(cone, grid)
    weights = [w for w in weights if cone.strictly_positive(w)]
    efficient: list[int] = []
    certs: dict[int, Vec] = {}
    for a_bar in reps:
        witness = None
        for w in weights:
            base = dot(w, a_bar)
            if all(dot(w, other) >= base for other in reps):
                witness = w
                break
        if witness is None:
            candidate = _refine_certificate(cone, reps, a_bar)
            if candidate is not None and cone.strictly_positive(candidate):
                witness = candidate
        if witness is not None:
            for idx in groups[a_bar]:
                efficient.append(idx)
                certs[idx] = witness
    return EfficiencyResult(tuple(sorted(efficient)), "prmin", certs)


# ---------------------------------------------------------------------------
# Frontier sampling
# ---------------------------------------------------------------------------


def default_weight_grid(cone: OrderCone, count: int = 21) -> list[Vec]:
    """Rational weights spanning the dual cone's generator simplex.

    Normalized to unit coordinate sum whenever that sum is positive,
    which keeps repeated runs byte-identical.
    """
    rays = cone.dual_rays
    if not rays:
        raise ConeDegenerate("ordering cone has a degenerate dual")

    def normalize(w: Vec) -> Vec:
        s = sum(w, ZERO)
        return tuple(a / s for a in w) if s > 0 else w

    if len(rays) == 1:
        return [normalize(rays[0])]
    if len(rays) == 2:
        out = []
        for i in range(count):
            s = Fraction(i, count - 1)
            w = tuple((1 - s) * a + s * b for a, b in zip(rays[0], rays[1]))
            out.append(normalize(w))
        return out
    out = [normalize(r) for r in rays]
    centroid = tuple(
        sum((r[j] for r in rays), ZERO) / len(rays) for j in range(cone.dim)
    )
    out.append(normalize(centroid))
    return out


def _grid_descent(problem, p, weight, rounds: int = 3, points_per_axis: int = 11):
    """Derivative-free scalarization descent for non-affine objectives."""
    from .problems import feasible_polyhedron, objective_value_float

    poly = feasible_polyhedron(problem, p)
    box = bounding_box(poly, clip=(-10, 10))
    lo = [float(b[0]) for b in box]
    hi = [float(b[1]) for b in box]
    w = [float(a) for a in weight]
    best_x = None
    best_val = None
    for _ in range(rounds):
        axes = []
        for j in range(problem.n_x):
            if hi[j] <= lo[j]:
                axes.append([lo[j]])
            else:
                step = (hi[j] - lo[j]) / (points_per_axis - 1)
                axes.append([lo[j] + k * step for k in range(points_per_axis)])
        import itertools as _it

        for candidate in _it.product(*axes):
            if not _feasible_float(problem, p, candidate):
                continue
            y = objective_value_float(problem, p, candidate)
            val = sum(wi * yi for wi, yi in zip(w, y))
            if best_val is None or val < best_val - 1e-15:
                best_val = val
                best_x = list(candidate)
        if best_x is None:
            raise Infeasible(tuple(p))
        span = [(h - l) / (points_per_axis - 1) if h > l else 0.0 for l, h in zip(lo, hi)]
        lo = [max(l, x - s) for l, x, s in zip(lo, best_x, span)]
        hi = [min(h, x + s) for h, x, s in zip(hi, best_x, span)]
    return tuple(best_x)


def _feasible_float(problem, p, x, tol: float = 1e-9) -> bool:
    from .problems import constraint_values_float

    return all(
        (v <= tol if rel == "le" else abs(v) <= tol)
        for v, rel in constraint_values_float(problem, p, x)
    )


def frontier_sample(
    problem,
    p,
    weights=None,
    weight_count: int = 21,
    minimal_filter: bool = True,
):
    """Sample the efficient frontier of ``F(p)`` by weighted scalarization.

    Raises ``Infeasible`` when the feasible set is empty and
    ``UnboundedScalarization`` when some requested weight has no finite
    minimum.  The result is deduplicated and lexicographically sorted,
    so parallel or repeated evaluation cannot change it.
    """
    from .problems import (
        AffineConstraints,
        AffineObjective,
        QuadraticObjective,
        SemiInfiniteConstraints,
        feasible_polyhedron,
        objective_value,
    )

    cone = problem.cone
    if weights is None:
        weights = default_weight_grid(cone, weight_count)
    else:
        weights = [vec(w) for w in weights]
    for w in weights:
        if not cone.dual.contains(w) or all(a == 0 for a in w):
            raise ValueError(f"weight {w!r} is not a nonzero dual-cone element")

    affine_path = isinstance(problem.objective, AffineObjective) and isinstance(
        problem.constraints, (AffineConstraints, SemiInfiniteConstraints)
    )
    points = set()
    if affine_path:
        p = vec(p)
        poly = feasible_polyhedron(problem, p)
        obj = problem.objective
        for w in weights:
            # cost over x of <w, f(p, x)>: rows of x_coef weighted by w.
            cost = tuple(
                sum((w[i] * obj.x_coef[i][j] for i in range(problem.n_y)), ZERO)
                for j in range(problem.n_x)
            )
            res = solve_lp(poly, cost)
            if res.status == lp.INFEASIBLE:
                raise Infeasible(tuple(p))
            if res.status == lp.UNBOUNDED:
                raise UnboundedScalarization(w)
            points.add(objective_value(problem, p, res.point))
    else:
        for w in weights:
            x = _grid_descent(problem, p, w)
            from .problems import objective_value_float

            points.add(tuple(objective_value_float(problem, p, x)))
    cloud = sorted(points)
    if minimal_filter and len(cloud) > 1:
        kept = min_points(cloud, cone)
        cloud = [cloud[i] for i in kept.indices]
    return cloud
