"""Independent brute-force verification in floating point.

Nothing in here consumes the closed-form coderivative machinery: the
epigraph of the frontier profile map is sampled directly (parameter
grid, scalarized vertex minimizers, cone paddings) and candidate normal
vectors are screened by the defining inequality of the Fréchet normal
cone at a fixed resolution.  Acceptance is necessary-at-resolution
evidence, never a proof; rejection of a perturbed candidate is the
discriminating half of the check.

This module is the only place where the library computes in floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCloud, UnsupportedConstraintKind
from .geometry import OrderCone
from .problems import (
    AffineConstraints,
    AffineObjective,
    BasePoint,
    BuiltinConstraints,
    ParametricProblem,
    SemiInfiniteConstraints,
    objective_value_float,
    objective_jacobians,
    reduced_rows,
)
from .rationals import vec, vneg, vsub


# ---------------------------------------------------------------------------
# Float constraint geometry
# ---------------------------------------------------------------------------


def float_rows(problem: ParametricProblem, truncation: float = 10.0):
    """Inequality-only float description of ``C(p)``: (A_p, A_x, rhs).

    Equality rows are split into opposite inequalities; a truncation box
    on x keeps vertex enumeration finite.
    """
    if isinstance(problem.constraints, BuiltinConstraints):
        raise UnsupportedConstraintKind("builtin constraints have no affine rows")
    ap, ax, rhs = [], [], []
    for row in reduced_rows(problem):
        pc = [float(a) for a in row.p_coef]
        xc = [float(a) for a in row.x_coef]
        off = float(row.offset)
        ap.append(pc)
        ax.append(xc)
        rhs.append(-off)
        if row.rel == "eq":
            ap.append([-a for a in pc])
            ax.append([-a for a in xc])
            rhs.append(off)
    n_x = problem.n_x
    for j in range(n_x):
        e = [0.0] * n_x
        e[j] = 1.0
        ap.append([0.0] * problem.n_p)
        ax.append(e)
        rhs.append(truncation)
        ap.append([0.0] * problem.n_p)
        ax.append([-a for a in e])
        rhs.append(truncation)
    return np.array(ap), np.array(ax), np.array(rhs)


def float_vertices(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vertices of ``{x : a x <= b}`` by batched basis enumeration."""
    m, n = a.shape
    if n == 0:
        return np.zeros((1, 0))
    combos = np.array(list(itertools.combinations(range(m), n)))
    if combos.size == 0:
        return np.zeros((0, n))
    sub_a = a[combos]
    sub_b = b[combos]
    dets = np.abs(np.linalg.det(sub_a))
    scale = np.maximum(np.abs(sub_a).reshape(len(combos), -1).max(axis=1), 1.0) ** n
    ok = dets > 1e-10 * scale
    if not ok.any():
        return np.zeros((0, n))
    points = np.linalg.solve(sub_a[ok], sub_b[ok][..., None])[..., 0]
    feasible = (a @ points.T <= b[:, None] + 1e-7).all(axis=0)
    points = points[feasible]
    if len(points) == 0:
        return points
    _, unique_idx = np.unique(np.round(points, 9), axis=0, return_index=True)
    return points[np.sort(unique_idx)]


def _affine_float_objective(problem: ParametricProblem):
    obj = problem.objective
    fp = np.array([[float(a) for a in row] for row in obj.p_coef]).reshape(
        problem.n_y, problem.n_p
    )
    fx = np.array([[float(a) for a in row] for row in obj.x_coef]).reshape(
        problem.n_y, problem.n_x
    )
    c = np.array([float(a) for a in obj.offset])
    return fp, fx, c


def _cone_rows_float(cone: OrderCone) -> np.ndarray:
    h = cone.cone.halfspaces()
    rows = [[float(a) for a in r] for r in h.ineq_matrix]
    for r in h.eq_matrix:
        rows.append([float(a) for a in r])
        rows.append([-float(a) for a in r])
    return np.array(rows) if rows else np.zeros((0, cone.dim))


def _dominates(rows: np.ndarray, diff: np.ndarray, tol: float) -> bool:
    """Whether ``diff`` lies in the cone ``{d : rows d <= 0}`` up to tol."""
    if rows.size == 0:
        return True
    return bool((rows @ diff <= tol).all())


def _min_filter(points: np.ndarray, rows: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    keep = []
    for i in range(len(points)):
        diff = points - points[i]
        nonzero = np.abs(diff).max(axis=1) > tol
        if rows.size:
            below = (rows @ (points[i] - points).T <= tol).all(axis=0)
        else:
            below = np.ones(len(points), dtype=bool)
        if not (nonzero & below).any():
            keep.append(i)
    return points[keep]


def _wmin_filter(points: np.ndarray, rows: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    keep = []
    for i in range(len(points)):
        if rows.size:
            strictly_below = (rows @ (points[i] - points).T < -tol).all(axis=0)
        else:
            strictly_below = np.zeros(len(points), dtype=bool)
        if not strictly_below.any():
            keep.append(i)
    return points[keep]


def float_frontier_cloud(
    problem: ParametricProblem,
    p,
    variant: str = "min",
    cone: OrderCone | None = None,
    weight_count: int = 9,
    truncation: float = 10.0,
    grid: int = 7,
):
    """Sampled efficient points of ``f(p, C(p))``; None when infeasible."""
    cone = cone or problem.cone
    pf = np.array([float(a) for a in p])
    a_p, a_x, rhs = float_rows(problem, truncation=truncation)
    b_at_p = rhs - a_p @ pf
    verts = float_vertices(a_x, b_at_p)
    if len(verts) == 0:
        return None
    rows = _cone_rows_float(problem.cone)
    if isinstance(problem.objective, AffineObjective):
        fp, fx, c = _affine_float_objective(problem)
        images = verts @ fx.T + (fp @ pf + c)
        duals = [np.array([float(a) for a in r]) for r in problem.cone.dual_rays]
        candidates = []
        if len(duals) >= 2:
            mixes = np.linspace(0.0, 1.0, weight_count)
            weights = [
                (1 - s) * duals[0] + s * duals[1] for s in mixes
            ]
        else:
            weights = duals
        for w in weights:
            scores = images @ w
            candidates.append(images[int(np.argmin(scores))])
        cloud = np.array(candidates)
    else:
        lows = verts.min(axis=0)
        highs = verts.max(axis=0)
        axes = [np.linspace(lows[j], highs[j], grid) for j in range(problem.n_x)]
        samples = [
            x
            for x in itertools.product(*axes)
            if (a_x @ np.array(x) <= b_at_p + 1e-7).all()
        ]
        if not samples:
            return None
        cloud = np.array(
            [objective_value_float(problem, tuple(pf), x) for x in samples]
        )
    if variant == "weak":
        return _wmin_filter(np.unique(np.round(cloud, 12), axis=0), rows)
    cloud = _min_filter(np.unique(np.round(cloud, 12), axis=0), rows)
    return cloud


# ---------------------------------------------------------------------------
# Epigraph sampling
# ---------------------------------------------------------------------------


@dataclass
class EpiCloud:
    """Finite sample of the frontier-profile graph near a base pair."""

    base: np.ndarray  # (p_bar, y_bar)
    samples: np.ndarray  # rows (p, y)
    delta: float
    n_p: int
    norm: str = "euclidean"
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.samples)


def _pair_norms(diffs: np.ndarray, n_p: int, norm: str) -> np.ndarray:
    if norm == "sum":
        return np.linalg.norm(diffs[:, :n_p], axis=1) + np.linalg.norm(
            diffs[:, n_p:], axis=1
        )
    return np.linalg.norm(diffs, axis=1)


def _cone_directions(cone: OrderCone, count: int) -> np.ndarray:
    gens = [np.array([float(a) for a in g]) for g in cone.cone.generators()]
    if not gens:
        return np.zeros((0, cone.dim))
    dirs = []
    if len(gens) >= 2:
        for s in np.linspace(0.0, 1.0, count):
            d = (1 - s) * gens[0] + s * gens[1]
            dirs.append(d)
        for g in gens[2:]:
            dirs.append(g)
    else:
        dirs = gens
    out = []
    for d in dirs:
        nrm = np.linalg.norm(d)
        if nrm > 0:
            out.append(d / nrm)
    return np.array(out)


def epi_cloud(
    problem: ParametricProblem,
    base: BasePoint,
    delta: float = 0.1,
    param_grid: int = 9,
    variant: str = "min",
    profile_cone: OrderCone | None = None,
    cone_dirs: int = 4,
    cone_scales=(1.0 / 3.0, 2.0 / 3.0, 1.0),
    norm: str = "euclidean",
    max_points: int = 20000,
) -> EpiCloud:
    """Grid the parameter ball, sample frontier clouds, pad up the cone.

    ``profile_cone`` chooses the cone added on top of the frontier (the
    auxiliary interior cone for the weak variant); every emitted sample
    lies in the profile graph up to frontier-sampling resolution.
    """
    cone = profile_cone or problem.cone
    n_p = problem.n_p
    p_bar = np.array([float(a) for a in base.p])
    y_bar = np.array([float(a) for a in base.y])
    omega = np.concatenate([p_bar, y_bar])
    if delta == 0:
        return EpiCloud(omega, omega[None, :], 0.0, n_p, norm)
    axes = [
        np.linspace(p_bar[j] - delta, p_bar[j] + delta, param_grid)
        for j in range(n_p)
    ]
    directions = _cone_directions(cone, cone_dirs)
    scales = np.array([0.0] + [s * delta for s in cone_scales])
    samples = [omega]
    skipped = []
    for p in itertools.product(*axes):
        cloud = float_frontier_cloud(problem, p, variant=variant)
        if cloud is None or len(cloud) == 0:
            skipped.append(p)
            continue
        parr = np.array(p)
        for y in cloud:
            for s in scales:
                if s == 0.0:
                    pads = np.zeros((1, len(y_bar)))
                else:
                    pads = s * directions
                for pad in pads:
                    candidate = np.concatenate([parr, y + pad])
                    diff = candidate - omega
                    if _pair_norms(diff[None, :], n_p, norm)[0] <= delta + 1e-12:
                        samples.append(candidate)
    arr = np.unique(np.round(np.array(samples), 12), axis=0)
    if len(arr) > max_points:
        stride = int(math.ceil(len(arr) / max_points))
        arr = arr[::stride]
    return EpiCloud(
        omega,
        arr,
        delta,
        n_p,
        norm,
        meta={"param_grid": param_grid, "skipped": tuple(map(tuple, skipped))},
    )


def max_normal_quotient(cloud: EpiCloud, v_star) -> float:
    """Worst Fréchet quotient of a candidate normal over the sample."""
    v = np.array([float(a) for a in v_star])
    diffs = cloud.samples - cloud.base
    norms = _pair_norms(diffs, cloud.n_p, cloud.norm)
    mask = norms > 1e-12
    if not mask.any():
        return -math.inf
    return float(np.max((diffs[mask] @ v) / norms[mask]))


def frechet_normal_test(cloud: EpiCloud, v_star, eps: float = 1e-3) -> bool:
    """One-sided empirical membership test for the Fréchet normal cone."""
    if len(cloud) == 0:
        raise EmptyCloud("the epigraph cloud is empty")
    return max_normal_quotient(cloud, v_star) <= eps


# ---------------------------------------------------------------------------
# Finite differences and reference efficiency
# ---------------------------------------------------------------------------


def finite_diff_gradient(problem: ParametricProblem, p, x, h: float = 1e-5):
    """Central-difference Jacobians of the objective over (p, x)."""
    pf = [float(a) for a in p]
    xf = [float(a) for a in x]
    n_y = problem.n_y

    def column(vals, idx, is_p):
        bumped = list(vals)
        bumped[idx] += h
        up = objective_value_float(problem, bumped if is_p else pf, xf if is_p else bumped)
        bumped[idx] -= 2 * h
        dn = objective_value_float(problem, bumped if is_p else pf, xf if is_p else bumped)
        return [(u - d) / (2 * h) for u, d in zip(up, dn)]

    jp = np.zeros((n_y, problem.n_p))
    for j in range(problem.n_p):
        jp[:, j] = column(pf, j, True)
    jx = np.zeros((n_y, problem.n_x))
    for j in range(problem.n_x):
        jx[:, j] = column(xf, j, False)
    return jp, jx


def analytic_jacobians_float(problem: ParametricProblem, p, x):
    jp, jx, _ = objective_jacobians(problem, p, x)
    return (
        np.array([[float(a) for a in row] for row in jp]).reshape(problem.n_y, problem.n_p),
        np.array([[float(a) for a in row] for row in jx]).reshape(problem.n_y, problem.n_x),
    )


def brute_force_min(cloud, cone: OrderCone, tol: float = 0.0) -> tuple[int, ...]:
    """Literal pairwise reference test for cone minimality.

    With ``tol == 0`` the test is exact (inputs rationalized); a
    positive tolerance switches to float comparisons for sampled data.
    """
    if tol == 0.0:
        pts = [vec(q) for q in cloud]
        out = []
        for i, a_bar in enumerate(pts):
            dominated = False
            for j, a in enumerate(pts):
                if j == i or a == a_bar:
                    continue
                if cone.contains(vsub(a_bar, a)):
                    dominated = True
                    break
            if not dominated:
                out.append(i)
        return tuple(out)
    rows = _cone_rows_float(cone)
    pts = np.asarray(cloud, dtype=float)
    out = []
    for i in range(len(pts)):
        diff = pts[i] - pts
        nonzero = np.abs(diff).max(axis=1) > tol
        if rows.size:
            below = (rows @ diff.T <= tol).all(axis=0)
        else:
            below = np.ones(len(pts), dtype=bool)
        if not (nonzero & below).any():
            out.append(i)
    return tuple(out)
