"""Exact polyhedral geometry: H-polyhedra, polyhedral cones, order cones.

Everything here computes in exact rational arithmetic.  The primal
representation is the H-form ``{x : A x <= b, E x = d}``; generator
(V-form) views of cones are produced on demand by combinatorial ray
enumeration, which is entirely adequate at the dimensions this library
targets (six and below).

Conventions:

* the *polar* of a cone K is the nonnegative polar
  ``{y : <y, k> >= 0 for all k in K}``; the sign-flipped variant is the
  negative polar;
* normal cones of polyhedra are returned in generator form (active
  inequality rows plus the span of equality rows), tangent cones in
  H-form;
* projections use Fourier-Motzkin elimination with on-demand LP-based
  redundancy pruning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import lp
from .errors import ConeDegenerate, PointNotInSet
from .rationals import (
    Matrix,
    ONE,
    Vec,
    ZERO,
    dot,
    is_zero_vec,
    mat,
    nullspace,
    primitive,
    rank,
    rat,
    rref,
    vec,
    vneg,
    zeros,
)

# Row counts above which Fourier-Motzkin interleaves LP redundancy pruning.
_FM_PRUNE_THRESHOLD = 32


# ---------------------------------------------------------------------------
# H-polyhedra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HPolyhedron:
    """``{x in R^dim : ineq_matrix x <= ineq_rhs, eq_matrix x = eq_rhs}``.

    Emptiness is a queryable state (:meth:`is_empty`), never an invalid
    one.  Instances are immutable; all operations return new objects.
    """

    dim: int
    ineq_matrix: Matrix = ()
    ineq_rhs: Vec = ()
    eq_matrix: Matrix = ()
    eq_rhs: Vec = ()

    def __post_init__(self):
        if len(self.ineq_matrix) != len(self.ineq_rhs):
            raise ValueError("inequality rows and rhs lengths differ")
        if len(self.eq_matrix) != len(self.eq_rhs):
            raise ValueError("equality rows and rhs lengths differ")
        for row in itertools.chain(self.ineq_matrix, self.eq_matrix):
            if len(row) != self.dim:
                raise ValueError("row width differs from ambient dimension")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_system(cls, ineq=(), ineq_rhs=(), eq=(), eq_rhs=(), dim=None):
        ineq_m = mat(ineq)
        eq_m = mat(eq)
        if dim is None:
            if ineq_m:
                dim = len(ineq_m[0])
            elif eq_m:
                dim = len(eq_m[0])
            else:
                raise ValueError("dimension required for a row-free system")
        return cls(dim, ineq_m, vec(ineq_rhs), eq_m, vec(eq_rhs))

    @classmethod
    def full_space(cls, dim: int) -> "HPolyhedron":
        return cls(dim)

    @classmethod
    def empty(cls, dim: int) -> "HPolyhedron":
        return cls(dim, (zeros(dim),), (Fraction(-1),), (), ())

    @classmethod
    def singleton(cls, point: Sequence) -> "HPolyhedron":
        p = vec(point)
        n = len(p)
        eye = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls(n, (), (), eye, p)

    @classmethod
    def from_box(cls, bounds: Sequence[tuple]) -> "HPolyhedron":
        """Axis-aligned box from per-coordinate ``(lo, hi)`` pairs."""
        n = len(bounds)
        rows, rhs = [], []
        for j, (lo, hi) in enumerate(bounds):
            if lo is not None:
                row = [ZERO] * n
                row[j] = -ONE
                rows.append(tuple(row))
                rhs.append(-rat(lo))
            if hi is not None:
                row = [ZERO] * n
                row[j] = ONE
                rows.append(tuple(row))
                rhs.append(rat(hi))
        return cls(n, tuple(rows), tuple(rhs), (), ())

    # -- basic queries ---------------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        p = vec(point)
        if len(p) != self.dim:
            raise ValueError("point dimension differs from ambient dimension")
        return all(
            dot(row, p) <= b for row, b in zip(self.ineq_matrix, self.ineq_rhs)
        ) and all(dot(row, p) == d for row, d in zip(self.eq_matrix, self.eq_rhs))

    def strictly_contains(self, point: Sequence) -> bool:
        """Interior membership; meaningful on canonical representations."""
        p = vec(point)
        if any(not is_zero_vec(row) for row in self.eq_matrix):
            return False
        if any(d != 0 for row, d in zip(self.eq_matrix, self.eq_rhs) if is_zero_vec(row)):
            return False
        return all(
            dot(row, p) < b for row, b in zip(self.ineq_matrix, self.ineq_rhs)
        )

    def is_empty(self) -> bool:
        return not lp_feasible(self)

    # -- immutable algebra -------------------------------------------------------

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in intersection")
        return HPolyhedron(
            self.dim,
            self.ineq_matrix + other.ineq_matrix,
            self.ineq_rhs + other.ineq_rhs,
            self.eq_matrix + other.eq_matrix,
            self.eq_rhs + other.eq_rhs,
        )

    def translate(self, shift: Sequence) -> "HPolyhedron":
        t = vec(shift)
        return HPolyhedron(
            self.dim,
            self.ineq_matrix,
            tuple(b + dot(row, t) for row, b in zip(self.ineq_matrix, self.ineq_rhs)),
            self.eq_matrix,
            tuple(d + dot(row, t) for row, d in zip(self.eq_matrix, self.eq_rhs)),
        )

    def scaled(self, factor) -> "HPolyhedron":
        """``{factor * x : x in self}`` for a nonzero rational factor."""
        t = rat(factor)
        if t == 0:
            raise ValueError("scaling factor must be nonzero")
        if t > 0:
            return HPolyhedron(
                self.dim,
                self.ineq_matrix,
                tuple(t * b for b in self.ineq_rhs),
                self.eq_matrix,
                tuple(t * d for d in self.eq_rhs),
            )
        return HPolyhedron(
            self.dim,
            tuple(vneg(r) for r in self.ineq_matrix),
            tuple(-t * b for b in self.ineq_rhs),
            self.eq_matrix,
            tuple(t * d for d in self.eq_rhs),
        )

    def negated(self) -> "HPolyhedron":
        return self.scaled(-1)

    def product(self, other: "HPolyhedron") -> "HPolyhedron":
        """Cartesian product, other's coordinates appended after self's."""
        n, k = self.dim, other.dim
        pad_left = zeros(n)
        pad_right = zeros(k)
        ineq = tuple(row + pad_right for row in self.ineq_matrix) + tuple(
            pad_left + row for row in other.ineq_matrix
        )
        eq = tuple(row + pad_right for row in self.eq_matrix) + tuple(
            pad_left + row for row in other.eq_matrix
        )
        return HPolyhedron(
            n + k, ineq, self.ineq_rhs + other.ineq_rhs, eq, self.eq_rhs + other.eq_rhs
        )

    # -- canonicalization ----------------------------------------------------------

    def canonical(self) -> "HPolyhedron":
        """Deterministic representative: primitive rows, rref equalities,
        lexicographically sorted, duplicates removed."""
        eq_aug = [row + (d,) for row, d in zip(self.eq_matrix, self.eq_rhs)]
        red, _ = rref(tuple(eq_aug))
        eqs = []
        for row in red:
            coeff, d = row[:-1], row[-1]
            if is_zero_vec(coeff):
                if d != 0:
                    return HPolyhedron.empty(self.dim)
                continue
            eqs.append(primitive(row))
        ineqs = set()
        for row, b in zip(self.ineq_matrix, self.ineq_rhs):
            if is_zero_vec(row):
                if b < 0:
                    return HPolyhedron.empty(self.dim)
                continue
            ineqs.add(primitive(row + (b,)))
        ineq_sorted = sorted(ineqs)
        eq_sorted = sorted(set(eqs))
        return HPolyhedron(
            self.dim,
            tuple(r[:-1] for r in ineq_sorted),
            tuple(r[-1] for r in ineq_sorted),
            tuple(r[:-1] for r in eq_sorted),
            tuple(r[-1] for r in eq_sorted),
        )

    def remove_redundant(self) -> "HPolyhedron":
        """Drop inequality rows implied by the others (one LP per row)."""
        poly = self.canonical()
        if not lp_feasible(poly):
            return HPolyhedron.empty(self.dim)
        rows = list(zip(poly.ineq_matrix, poly.ineq_rhs))
        keep: list[tuple[Vec, Fraction]] = []
        for i, (row, b) in enumerate(rows):
            others = keep + rows[i + 1 :]
            res = lp.solve_raw(
                tuple(r for r, _ in others),
                tuple(v for _, v in others),
                poly.eq_matrix,
                poly.eq_rhs,
                poly.dim,
                row,
                maximize=True,
            )
            if res.status == lp.OPTIMAL and res.value <= b:
                continue
            keep.append((row, b))
        return HPolyhedron(
            self.dim,
            tuple(r for r, _ in keep),
            tuple(v for _, v in keep),
            poly.eq_matrix,
            poly.eq_rhs,
        )


# ---------------------------------------------------------------------------
# LP wrappers
# ---------------------------------------------------------------------------


def solve_lp(poly: HPolyhedron, cost: Sequence, maximize: bool = False) -> lp.LPResult:
    return lp.solve_raw(
        poly.ineq_matrix,
        poly.ineq_rhs,
        poly.eq_matrix,
        poly.eq_rhs,
        poly.dim,
        vec(cost),
        maximize=maximize,
    )


def lp_feasible(poly: HPolyhedron) -> bool:
    res = lp.feasible_raw(
        poly.ineq_matrix, poly.ineq_rhs, poly.eq_matrix, poly.eq_rhs, poly.dim
    )
    return res.status == lp.OPTIMAL


def feasible_point(poly: HPolyhedron) -> Vec | None:
    res = lp.feasible_raw(
        poly.ineq_matrix, poly.ineq_rhs, poly.eq_matrix, poly.eq_rhs, poly.dim
    )
    return res.point if res.status == lp.OPTIMAL else None


def is_member(poly: HPolyhedron, point: Sequence) -> bool:
    return poly.contains(point)


def canonical_point(poly: HPolyhedron) -> Vec | None:
    """Deterministic representative point: minimal L1 norm, then lexmin."""
    n = poly.dim
    if n == 0:
        return () if lp_feasible(poly) else None
    # Work in (x, t) with -t <= x <= t.
    rows = [row + zeros(n) for row in poly.ineq_matrix]
    rhs = list(poly.ineq_rhs)
    for j in range(n):
        xpos = [ZERO] * (2 * n)
        xpos[j] = ONE
        xpos[n + j] = -ONE
        rows.append(tuple(xpos))
        rhs.append(ZERO)
        xneg = [ZERO] * (2 * n)
        xneg[j] = -ONE
        xneg[n + j] = -ONE
        rows.append(tuple(xneg))
        rhs.append(ZERO)
    eqs = [row + zeros(n) for row in poly.eq_matrix]
    eq_rhs = list(poly.eq_rhs)
    lifted = HPolyhedron(2 * n, tuple(rows), tuple(rhs), tuple(eqs), tuple(eq_rhs))
    l1_cost = zeros(n) + (ONE,) * n
    res = solve_lp(lifted, l1_cost)
    if res.status != lp.OPTIMAL:
        return None
    lifted = lifted.intersect(
        HPolyhedron(2 * n, (), (), (l1_cost,), (res.value,))
    )
    coords: list[Fraction] = []
    for j in range(n):
        cost = zeros(2 * n)
        cost = cost[:j] + (ONE,) + cost[j + 1 :]
        step = solve_lp(lifted, cost)
        coords.append(step.value)
        pin = zeros(2 * n)
        pin = pin[:j] + (ONE,) + pin[j + 1 :]
        lifted = lifted.intersect(
            HPolyhedron(2 * n, (), (), (pin,), (step.value,))
        )
    return tuple(coords)


def coordinate_range(poly: HPolyhedron, j: int) -> tuple[Fraction | None, Fraction | None]:
    """Exact (min, max) of coordinate j; None marks an unbounded side."""
    cost = tuple(ONE if i == j else ZERO for i in range(poly.dim))
    lo = solve_lp(poly, cost, maximize=False)
    hi = solve_lp(poly, cost, maximize=True)
    return (
        lo.value if lo.status == lp.OPTIMAL else None,
        hi.value if hi.status == lp.OPTIMAL else None,
    )


def bounding_box(poly: HPolyhedron, clip: tuple | None = None):
    """Per-coordinate exact ranges, optionally clipped to ``(lo, hi)``."""
    out = []
    for j in range(poly.dim):
        lo, hi = coordinate_range(poly, j)
        if clip is not None:
            clo, chi = rat(clip[0]), rat(clip[1])
            lo = clo if lo is None else max(lo, clo)
            hi = chi if hi is None else min(hi, chi)
        out.append((lo, hi))
    return out


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection
# ---------------------------------------------------------------------------


def _normalize_rows(ineqs, eqs, dim):
    """Dedupe and primitively scale; returns None on a trivially empty system."""
    iset = set()
    for row, b in ineqs:
        if is_zero_vec(row):
            if b < 0:
                return None
            continue
        iset.add(primitive(row + (b,)))
    eset = set()
    for row, d in eqs:
        if is_zero_vec(row):
            if d != 0:
                return None
            continue
        eset.add(primitive(row + (d,)))
    return (
        sorted((r[:-1], r[-1]) for r in iset),
        sorted((r[:-1], r[-1]) for r in eset),
    )


def _eliminate_column(ineqs, eqs, col):
    """Fourier-Motzkin / Gaussian elimination of one coordinate."""
    pivot_eq = next((k for k, (row, _) in enumerate(eqs) if row[col] != 0), None)
    if pivot_eq is not None:
        prow, prhs = eqs[pivot_eq]
        pc = prow[col]

        def subst(row, rhs):
            f = row[col] / pc
            return (
                tuple(a - f * p for a, p in zip(row, prow)),
                rhs - f * prhs,
            )

        new_ineqs = [subst(r, b) for r, b in ineqs]
        new_eqs = [subst(r, d) for k, (r, d) in enumerate(eqs) if k != pivot_eq]
        return new_ineqs, new_eqs
    zero, pos, neg = [], [], []
    for row, b in ineqs:
        (pos if row[col] > 0 else neg if row[col] < 0 else zero).append((row, b))
    combined = list(zero)
    for prow, pb in pos:
        for nrow, nb in neg:
            alpha = prow[col]
            beta = -nrow[col]
            crow = tuple(beta * a + alpha * c for a, c in zip(prow, nrow))
            combined.append((crow, beta * pb + alpha * nb))
    return combined, list(eqs)


def _drop_columns(rows, cols_to_drop):
    keep = None
    out = []
    for row, rhs in rows:
        if keep is None:
            keep = [j for j in range(len(row)) if j not in cols_to_drop]
        out.append((tuple(row[j] for j in keep), rhs))
    return out


def project(poly: HPolyhedron, keep_coords: Iterable[int]) -> HPolyhedron:
    """Exact orthogonal projection onto the listed coordinates (ascending)."""
    keep = sorted(set(keep_coords))
    if any(j < 0 or j >= poly.dim for j in keep):
        raise ValueError("keep_coords outside the ambient dimension")
    drop = [j for j in range(poly.dim) if j not in keep]
    ineqs = list(zip(poly.ineq_matrix, poly.ineq_rhs))
    eqs = list(zip(poly.eq_matrix, poly.eq_rhs))
    live = list(range(poly.dim))
    for target in reversed(drop):
        col = live.index(target)
        ineqs, eqs = _eliminate_column(ineqs, eqs, col)
        ineqs = _drop_columns(ineqs, {col})
        eqs = _drop_columns(eqs, {col}) if eqs else []
        live.pop(col)
        normalized = _normalize_rows(ineqs, eqs, len(live))
        if normalized is None:
            return HPolyhedron.empty(len(keep))
        ineqs, eqs = normalized
        if len(ineqs) > _FM_PRUNE_THRESHOLD:
            interim = HPolyhedron(
                len(live),
                tuple(r for r, _ in ineqs),
                tuple(b for _, b in ineqs),
                tuple(r for r, _ in eqs),
                tuple(d for _, d in eqs),
            ).remove_redundant()
            ineqs = list(zip(interim.ineq_matrix, interim.ineq_rhs))
            eqs = list(zip(interim.eq_matrix, interim.eq_rhs))
    return HPolyhedron(
        len(keep),
        tuple(r for r, _ in ineqs),
        tuple(b for _, b in ineqs),
        tuple(r for r, _ in eqs),
        tuple(d for _, d in eqs),
    ).canonical()


def minkowski_sum(left: HPolyhedron, right: HPolyhedron) -> HPolyhedron:
    """``{a + b : a in left, b in right}`` via lift-and-project."""
    if left.dim != right.dim:
        raise ValueError("dimension mismatch in Minkowski sum")
    n = left.dim
    # Variables (x, a) with a in `left` and x - a in `right`.
    rows = []
    rhs = []
    for row, b in zip(right.ineq_matrix, right.ineq_rhs):
        rows.append(row + vneg(row))
        rhs.append(b)
    for row, b in zip(left.ineq_matrix, left.ineq_rhs):
        rows.append(zeros(n) + row)
        rhs.append(b)
    eq_rows = []
    eq_rhs = []
    for row, d in zip(right.eq_matrix, right.eq_rhs):
        eq_rows.append(row + vneg(row))
        eq_rhs.append(d)
    for row, d in zip(left.eq_matrix, left.eq_rhs):
        eq_rows.append(zeros(n) + row)
        eq_rhs.append(d)
    lifted = HPolyhedron(2 * n, tuple(rows), tuple(rhs), tuple(eq_rows), tuple(eq_rhs))
    return project(lifted, range(n))


def affine_image(matrix, poly: HPolyhedron, offset=None) -> HPolyhedron:
    """``{M x + c : x in poly}`` via lift-and-project."""
    m = mat(matrix)
    k = len(m)
    n = poly.dim
    c = vec(offset) if offset is not None else zeros(k)
    if m and len(m[0]) != n:
        raise ValueError("matrix width differs from polyhedron dimension")
    eq_rows = []
    eq_rhs = []
    for i in range(k):
        row = tuple(ONE if j == i else ZERO for j in range(k)) + vneg(m[i])
        eq_rows.append(row)
        eq_rhs.append(c[i])
    for row, d in zip(poly.eq_matrix, poly.eq_rhs):
        eq_rows.append(zeros(k) + row)
        eq_rhs.append(d)
    ineq_rows = tuple(zeros(k) + row for row in poly.ineq_matrix)
    lifted = HPolyhedron(
        k + n, ineq_rows, poly.ineq_rhs, tuple(eq_rows), tuple(eq_rhs)
    )
    return project(lifted, range(k))


# ---------------------------------------------------------------------------
# Vertices and set comparisons
# ---------------------------------------------------------------------------


def _solve_exact(rows: Matrix, rhs: Vec, n: int) -> Vec | None:
    aug = tuple(row + (r,) for row, r in zip(rows, rhs))
    red, pivots = rref(aug)
    if n in pivots:
        return None  # inconsistent
    if len(pivots) != n:
        return None  # underdetermined
    sol = [ZERO] * n
    for i, p in enumerate(pivots):
        sol[p] = red[i][n]
    return tuple(sol)


def vertices(poly: HPolyhedron) -> list[Vec]:
    """All vertices (basic feasible points), enumerated combinatorially."""
    n = poly.dim
    if n == 0:
        return [()] if lp_feasible(poly) else []
    poly = poly.canonical()
    eq_rank = rank(poly.eq_matrix)
    need = n - eq_rank
    if need < 0:
        return []
    found: set[Vec] = set()
    m = len(poly.ineq_matrix)
    for subset in itertools.combinations(range(m), need):
        rows = poly.eq_matrix + tuple(poly.ineq_matrix[i] for i in subset)
        rhs = poly.eq_rhs + tuple(poly.ineq_rhs[i] for i in subset)
        point = _solve_exact(rows, rhs, n)
        if point is not None and poly.contains(point):
            found.add(point)
    return sorted(found)


def poly_contains(outer: HPolyhedron, inner: HPolyhedron) -> bool:
    """Exact inclusion inner ⊆ outer via one LP per outer row."""
    if outer.dim != inner.dim:
        raise ValueError("dimension mismatch")
    if not lp_feasible(inner):
        return True
    for row, b in zip(outer.ineq_matrix, outer.ineq_rhs):
        res = solve_lp(inner, row, maximize=True)
        if res.status != lp.OPTIMAL or res.value > b:
            return False
    for row, d in zip(outer.eq_matrix, outer.eq_rhs):
        hi = solve_lp(inner, row, maximize=True)
        lo = solve_lp(inner, row, maximize=False)
        if hi.status != lp.OPTIMAL or lo.status != lp.OPTIMAL:
            return False
        if hi.value != d or lo.value != d:
            return False
    return True


def poly_equal(left: HPolyhedron, right: HPolyhedron) -> bool:
    return poly_contains(left, right) and poly_contains(right, left)


# ---------------------------------------------------------------------------
# Polyhedral cones
# ---------------------------------------------------------------------------


def _hcone_rays(h: HPolyhedron) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and a lineality basis of ``{x : A x <= 0, E x = 0}``."""
    n = h.dim
    stacked = h.ineq_matrix + h.eq_matrix
    lin = [primitive(v) for v in nullspace(stacked, n)]
    work = h
    if lin:
        work = HPolyhedron(
            n,
            h.ineq_matrix,
            zeros(len(h.ineq_matrix)),
            h.eq_matrix + tuple(lin),
            zeros(len(h.eq_matrix) + len(lin)),
        )
    rays = _pointed_rays(work)
    return rays, lin


def _pointed_rays(h: HPolyhedron) -> list[Vec]:
    n = h.dim
    ineq = h.ineq_matrix
    eq_rank = rank(h.eq_matrix)
    need = n - 1 - eq_rank
    if need < 0:
        return []
    found: set[Vec] = set()

    def feasible(v: Vec) -> bool:
        return all(dot(row, v) <= 0 for row in ineq)

    for subset in itertools.combinations(range(len(ineq)), need):
        rows = h.eq_matrix + tuple(ineq[i] for i in subset)
        if rank(rows) != n - 1:
            continue
        basis = nullspace(rows, n)
        if len(basis) != 1:
            continue
        v = primitive(basis[0])
        if feasible(v):
            found.add(v)
        else:
            w = primitive(vneg(v))
            if feasible(w):
                found.add(w)
    return sorted(found)


@dataclass(frozen=True)
class PolyCone:
    """A polyhedral convex cone, held in H-form, generator form, or both.

    H-form is homogeneous (zero right-hand sides); the generator form
    lists rays, with any lineality encoded by opposite pairs.
    """

    dim: int
    hrep: HPolyhedron | None = None
    gens: tuple[Vec, ...] | None = None

    def __post_init__(self):
        if self.hrep is None and self.gens is None:
            raise ValueError("a cone needs an H-form or generators")
        if self.hrep is not None:
            if any(b != 0 for b in self.hrep.ineq_rhs) or any(
                d != 0 for d in self.hrep.eq_rhs
            ):
                raise ValueError("cone H-form must be homogeneous")
            if self.hrep.dim != self.dim:
                raise ValueError("H-form dimension mismatch")
        if self.gens is not None and any(len(g) != self.dim for g in self.gens):
            raise ValueError("generator dimension mismatch")

    @classmethod
    def from_halfspaces(cls, hpoly: HPolyhedron) -> "PolyCone":
        return cls(hpoly.dim, hrep=hpoly.canonical())

    @classmethod
    def from_generators(cls, generators: Iterable, dim: int | None = None) -> "PolyCone":
        rows = [vec(g) for g in generators]
        if dim is None:
            if not rows:
                raise ValueError("dimension required for an empty generator list")
            dim = len(rows[0])
        cleaned = sorted({primitive(g) for g in rows if not is_zero_vec(g)})
        return cls(dim, gens=tuple(cleaned))

    @classmethod
    def zero(cls, dim: int) -> "PolyCone":
        return cls(dim, gens=())

    @classmethod
    def full(cls, dim: int) -> "PolyCone":
        return cls(dim, hrep=HPolyhedron.full_space(dim))

    @cached_property
    def _halfspaces(self) -> HPolyhedron:
        if self.hrep is not None:
            return self.hrep
        # cone(g_i) = polar of {y : <g_i, y> >= 0}, computed by enumerating
        # the rays and lineality of that auxiliary H-cone.
        aux = HPolyhedron(
            self.dim,
            tuple(vneg(g) for g in self.gens),
            zeros(len(self.gens)),
            (),
            (),
        )
        rays, lin = _hcone_rays(aux)
        return HPolyhedron(
            self.dim,
            tuple(vneg(r) for r in rays),
            zeros(len(rays)),
            tuple(lin),
            zeros(len(lin)),
        ).canonical()

    @cached_property
    def _generators(self) -> tuple[Vec, ...]:
        if self.gens is not None:
            return self.gens
        rays, lin = _hcone_rays(self.hrep)
        flat = set(rays)
        for v in lin:
            flat.add(primitive(v))
            flat.add(primitive(vneg(v)))
        return tuple(sorted(flat))

    def halfspaces(self) -> HPolyhedron:
        return self._halfspaces

    def generators(self) -> tuple[Vec, ...]:
        return self._generators

    def contains(self, point: Sequence) -> bool:
        return self.halfspaces().contains(point)

    def interior_contains(self, point: Sequence) -> bool:
        return self.halfspaces().strictly_contains(point)

    def is_zero(self) -> bool:
        return not self.generators()


def polar_cone(cone: PolyCone) -> PolyCone:
    """Nonnegative polar ``{y : <y, k> >= 0 for all k in cone}`` in H-form."""
    gens = cone.generators()
    h = HPolyhedron(
        cone.dim, tuple(vneg(g) for g in gens), zeros(len(gens)), (), ()
    ).canonical()
    return PolyCone.from_halfspaces(h)


def negative_polar(cone: PolyCone) -> PolyCone:
    """``{y : <y, k> <= 0 for all k in cone}``."""
    gens = cone.generators()
    h = HPolyhedron(cone.dim, tuple(gens), zeros(len(gens)), (), ()).canonical()
    return PolyCone.from_halfspaces(h)


def cone_contains(outer: PolyCone, inner: PolyCone) -> bool:
    half = outer.halfspaces()
    return all(half.contains(g) for g in inner.generators())


def cone_equal(left: PolyCone, right: PolyCone) -> bool:
    return cone_contains(left, right) and cone_contains(right, left)


def cone_scaled(cone: PolyCone, factor) -> PolyCone:
    t = rat(factor)
    if t > 0:
        return cone
    if t == 0:
        return PolyCone.zero(cone.dim)
    return PolyCone.from_generators(
        [vneg(g) for g in cone.generators()] or [], dim=cone.dim
    )


def tangent_cone(poly: HPolyhedron, point: Sequence) -> PolyCone:
    """Directions of admissible motion at a point of the polyhedron (H-form)."""
    p = vec(point)
    if not poly.contains(p):
        raise PointNotInSet(f"point {p} is not in the polyhedron")
    active = tuple(
        row for row, b in zip(poly.ineq_matrix, poly.ineq_rhs) if dot(row, p) == b
    )
    h = HPolyhedron(
        poly.dim,
        active,
        zeros(len(active)),
        poly.eq_matrix,
        zeros(len(poly.eq_matrix)),
    ).canonical()
    return PolyCone.from_halfspaces(h)


def normal_cone(poly: HPolyhedron, point: Sequence) -> PolyCone:
    """Outward normals at a point: active inequality rows plus the span of
    the equality rows, in generator form."""
    p = vec(point)
    if not poly.contains(p):
        raise PointNotInSet(f"point {p} is not in the polyhedron")
    gens: list[Vec] = [
        row for row, b in zip(poly.ineq_matrix, poly.ineq_rhs) if dot(row, p) == b
    ]
    for row in poly.eq_matrix:
        gens.append(row)
        gens.append(vneg(row))
    return PolyCone.from_generators(gens, dim=poly.dim)


def lineality(cone: PolyCone) -> PolyCone:
    """``cone ∩ -cone`` as an H-form cone (all rows tightened to equalities)."""
    h = cone.halfspaces()
    rows = h.ineq_matrix + h.eq_matrix
    sub = HPolyhedron(h.dim, (), (), rows, zeros(len(rows))).canonical()
    return PolyCone.from_halfspaces(sub)


def is_linear_subspace(cone: PolyCone) -> bool:
    """True iff cone = -cone, checked by generator membership both ways."""
    return all(cone.contains(vneg(g)) for g in cone.generators())


def cone_hull(poly: HPolyhedron) -> PolyCone:
    """Closure of ``{t x : t >= 0, x in poly}`` via homogenization."""
    if not lp_feasible(poly):
        raise ValueError("cone hull of an empty polyhedron is undefined")
    n = poly.dim
    rows = [row + (-b,) for row, b in zip(poly.ineq_matrix, poly.ineq_rhs)]
    t_row = zeros(n) + (-ONE,)
    rows.append(t_row)
    eqs = [row + (-d,) for row, d in zip(poly.eq_matrix, poly.eq_rhs)]
    lifted = HPolyhedron(
        n + 1,
        tuple(rows),
        zeros(len(rows)),
        tuple(eqs),
        zeros(len(eqs)),
    )
    shadow = project(lifted, range(n))
    return PolyCone.from_halfspaces(shadow)


# ---------------------------------------------------------------------------
# Order cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderCone:
    """A pointed closed convex polyhedral ordering cone with cached dual.

    Pointedness (``K ∩ -K = {0}``) is enforced at construction; the
    degenerate cone ``{0}`` is pointed and allowed.
    """

    cone: PolyCone

    def __post_init__(self):
        h = self.cone.halfspaces()
        stacked = h.ineq_matrix + h.eq_matrix
        if nullspace(stacked, h.dim):
            raise ConeDegenerate("ordering cone must be pointed")

    @classmethod
    def from_generators(cls, generators, dim: int | None = None) -> "OrderCone":
        return cls(PolyCone.from_generators(generators, dim=dim))

    @classmethod
    def from_halfspaces(cls, rows, dim: int | None = None) -> "OrderCone":
        """Rows ``h`` meaning ``<h, y> >= 0``."""
        m = mat(rows)
        if dim is None:
            if not m:
                raise ValueError("dimension required")
            dim = len(m[0])
        h = HPolyhedron(
            dim, tuple(vneg(r) for r in m), zeros(len(m)), (), ()
        ).canonical()
        return cls(PolyCone.from_halfspaces(h))

    @classmethod
    def nonneg_orthant(cls, dim: int) -> "OrderCone":
        eye = [tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)]
        return cls.from_generators(eye, dim=dim)

    @property
    def dim(self) -> int:
        return self.cone.dim

    @cached_property
    def dual(self) -> PolyCone:
        return polar_cone(self.cone)

    @cached_property
    def dual_rays(self) -> tuple[Vec, ...]:
        return self.dual.generators()

    @cached_property
    def is_solid(self) -> bool:
        """Whether the cone has nonempty interior in the ambient space."""
        h = self.cone.halfspaces().canonical()
        if any(not is_zero_vec(row) for row in h.eq_matrix):
            return False
        n = h.dim
        rows = [row + (ONE,) for row in h.ineq_matrix]
        rows.append(zeros(n) + (ONE,))
        rhs = zeros(len(h.ineq_matrix)) + (ONE,)
        gap = HPolyhedron(n + 1, tuple(rows), rhs, (), ())
        res = solve_lp(gap, zeros(n) + (ONE,), maximize=True)
        return res.status == lp.OPTIMAL and res.value > 0

    def contains(self, point: Sequence) -> bool:
        return self.cone.contains(point)

    def interior_contains(self, point: Sequence) -> bool:
        return self.is_solid and self.cone.interior_contains(point)

    def strictly_positive(self, functional: Sequence) -> bool:
        """Whether ``<w, k> > 0`` for every nonzero k in the cone."""
        w = vec(functional)
        return all(dot(w, g) > 0 for g in self.cone.generators())

    def interior_functional(self) -> Vec:
        """A canonical functional strictly positive on the cone minus zero."""
        rays = self.dual_rays
        if not rays:
            raise ConeDegenerate("dual cone has no rays")
        total = zeros(self.dim)
        for r in rays:
            total = tuple(a + b for a, b in zip(total, r))
        return total
