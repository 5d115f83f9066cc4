"""Empirical certification of the frontier domination hypotheses.

The transfer from attainable-set sensitivity to frontier sensitivity
needs the attainable set to sit above its own frontier throughout a
parameter neighborhood.  No finite procedure can decide that inclusion
in general, so the certificate here is openly empirical: sampled
parameters, gridded images, cone-membership tests with a small slack.
It is consumed as a precondition artifact and carries its own sampling
metadata (radius, counts, seed) for reproducibility.

On the affine path one exact precheck runs first: if the image map's
recession cone meets the negated order cone nontrivially, frontiers are
empty at every parameter and the certificate fails outright; this stops
the truncation box from masking unbounded descent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedConstraintKind
from .geometry import HPolyhedron, PolyCone, affine_image
from .oracle import (
    _affine_float_objective,
    _cone_rows_float,
    float_frontier_cloud,
    float_rows,
    float_vertices,
)
from .problems import (
    AffineConstraints,
    AffineObjective,
    ParametricProblem,
    SemiInfiniteConstraints,
    objective_value_float,
    reduced_rows,
)
from .rationals import vec, zeros

DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class Violation:
    parameter: tuple
    image: tuple | None
    distance: float
    kind: str  # "not_dominated" | "frontier_empty"


@dataclass(frozen=True)
class DominationCertificate:
    variant: str
    radius: float
    n_param_samples: int
    n_image_samples: int
    holds_empirically: bool
    violations: tuple[Violation, ...]
    seed: int
    truncation: float
    infeasible_params: tuple = ()
    notes: str = ""

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "radius": self.radius,
            "n_param_samples": self.n_param_samples,
            "n_image_samples": self.n_image_samples,
            "holds_empirically": self.holds_empirically,
            "seed": self.seed,
            "truncation": self.truncation,
            "violations": [
                {
                    "parameter": list(v.parameter),
                    "image": None if v.image is None else list(v.image),
                    "distance": v.distance,
                    "kind": v.kind,
                }
                for v in self.violations
            ],
            "infeasible_params": [list(p) for p in self.infeasible_params],
            "notes": self.notes,
        }


def _recession_blocks_frontier(problem: ParametricProblem) -> bool:
    """Exact test: the image recession cone meets -K away from zero,
    so no parameter has any efficient point."""
    if not isinstance(problem.objective, AffineObjective) or not isinstance(
        problem.constraints, (AffineConstraints, SemiInfiniteConstraints)
    ):
        return False
    rows = reduced_rows(problem)
    ineq = tuple(r.x_coef for r in rows if r.rel == "le")
    eq = tuple(r.x_coef for r in rows if r.rel == "eq")
    recession = HPolyhedron(
        problem.n_x, ineq, zeros(len(ineq)), eq, zeros(len(eq))
    )
    image = affine_image(problem.objective.x_coef, recession)
    neg_cone = problem.cone.cone.halfspaces().scaled(-1)
    meet = PolyCone.from_halfspaces(image.intersect(neg_cone).canonical())
    return bool(meet.generators())


def _sample_ball(rng: np.random.Generator, center: np.ndarray, radius: float, count: int):
    """Rejection-sampled uniform ball points, one draw at a time so a
    longer run extends (never reshuffles) a shorter one."""
    out = []
    d = len(center)
    while len(out) < count:
        cand = rng.uniform(-1.0, 1.0, size=d)
        if np.linalg.norm(cand) <= 1.0:
            out.append(center + radius * cand)
    return out


def exact_face_domination(problem: ParametricProblem, p) -> bool:
    """Exact inclusion check for affine instances whose frontier is the
    single face exposed by a strictly positive functional."""
    from .geometry import lp_feasible, minkowski_sum, poly_contains, solve_lp
    from .rationals import dot, mat_t_vec

    p = vec(p)
    obj = problem.objective
    from .problems import feasible_polyhedron

    feas = feasible_polyhedron(problem, p)
    if not lp_feasible(feas):
        return True  # nothing to dominate
    image = affine_image(
        obj.x_coef,
        feas,
        tuple(
            dot(obj.p_coef[i], p) + obj.offset[i] for i in range(problem.n_y)
        ),
    )
    w = problem.cone.interior_functional()
    res = solve_lp(image, w)
    if res.status != "optimal":
        return False
    face = image.intersect(
        HPolyhedron(problem.n_y, (), (), (vec(w),), (res.value,))
    )
    padded = minkowski_sum(face, problem.cone.cone.halfspaces())
    return poly_contains(padded, image)


def check_domination(
    problem: ParametricProblem,
    p_bar,
    variant: str = "min",
    radius: float = 0.5,
    n_param_samples: int = 32,
    image_grid: int = 15,
    seed: int = DEFAULT_SEED,
    slack: float = 1e-6,
    truncation: float = 10.0,
    strict_tilde: bool = False,
) -> DominationCertificate:
    """Sample the parameter ball and test image points against the
    sampled frontier pushed up the cone.

    ``strict_tilde`` switches the weak variant to the tighter inclusion
    through the auxiliary cone instead of the order cone.
    """
    if variant not in ("min", "weak", "proper"):
        raise ValueError(f"unknown variant {variant!r}")
    p_bar = vec(p_bar)
    notes = []
    violations: list[Violation] = []
    infeasible: list[tuple] = []
    n_images = 0

    pad_cone = problem.cone
    if variant == "weak" and strict_tilde:
        if problem.cone_tilde is None:
            raise ValueError("strict_tilde needs cone_tilde on the problem")
        pad_cone = problem.cone_tilde
    pad_rows = _cone_rows_float(pad_cone)

    rng = np.random.default_rng(seed)
    center = np.array([float(a) for a in p_bar])
    params = [center] + _sample_ball(rng, center, radius, n_param_samples - 1)

    if _recession_blocks_frontier(problem):
        notes.append("image recession meets the negated order cone: frontiers empty")
        for p in params:
            violations.append(Violation(tuple(p), None, float("inf"), "frontier_empty"))
        return DominationCertificate(
            variant,
            radius,
            n_param_samples,
            0,
            False,
            tuple(violations),
            seed,
            truncation,
            tuple(),
            "; ".join(notes),
        )

    try:
        a_p, a_x, rhs = float_rows(problem, truncation=truncation)
        affine_rows_ok = True
    except UnsupportedConstraintKind:
        affine_rows_ok = False

    for p in params:
        cloud = float_frontier_cloud(
            problem, p, variant=variant, truncation=truncation
        )
        if cloud is None:
            infeasible.append(tuple(p))
            continue
        if len(cloud) == 0:
            violations.append(Violation(tuple(p), None, float("inf"), "frontier_empty"))
            continue
        if not affine_rows_ok:
            continue
        b_at_p = rhs - a_p @ p
        verts = float_vertices(a_x, b_at_p)
        if len(verts) == 0:
            infeasible.append(tuple(p))
            continue
        lows = verts.min(axis=0)
        highs = verts.max(axis=0)
        axes = [np.linspace(lows[j], highs[j], image_grid) for j in range(problem.n_x)]
        grid_pts = np.array(list(itertools.product(*axes)))
        feas = (a_x @ grid_pts.T <= b_at_p[:, None] + 1e-9).all(axis=0)
        xs = grid_pts[feas]
        if len(xs) == 0:
            continue
        if isinstance(problem.objective, AffineObjective):
            fp, fx, c = _affine_float_objective(problem)
            images = xs @ fx.T + (fp @ p + c)
        else:
            images = np.array(
                [objective_value_float(problem, tuple(p), tuple(x)) for x in xs]
            )
        n_images += len(images)
        if pad_rows.size:
            diff = images[:, None, :] - cloud[None, :, :]
            worst_row = np.einsum("rk,ifk->ifr", pad_rows, diff).max(axis=2)
            best = worst_row.min(axis=1)
        else:
            best = np.zeros(len(images))
        for idx in np.nonzero(best > slack)[0]:
            violations.append(
                Violation(tuple(p), tuple(images[idx]), float(best[idx]), "not_dominated")
            )
    violations.sort(key=lambda v: (v.parameter, v.image or ()))
    return DominationCertificate(
        variant,
        radius,
        n_param_samples,
        n_images,
        not violations,
        tuple(violations),
        seed,
        truncation,
        tuple(infeasible),
        "; ".join(notes),
    )
