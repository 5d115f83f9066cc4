"""Exact linear programming over the rationals.

A dense two-phase primal simplex with Bland's anti-cycling rule,
operating entirely on ``Fraction`` arithmetic.  Problem sizes in this
library are tiny (tens of rows and columns), so a textbook tableau is
the right tool: no tolerances, no scaling, exact optima.

The low-level entry point works on raw constraint data
``(A, b, E, d)`` meaning ``{x : A x <= b, E x = d}`` with free
variables; :mod:`vopsens.geometry` wraps it for polyhedron objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import Matrix, ONE, Vec, ZERO, dot

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    point: Vec | None = None
    value: Fraction | None = None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pivot = tableau[row][col]
    tableau[row] = [a / pivot for a in tableau[row]]
    prow = tableau[row]
    for i, trow in enumerate(tableau):
        if i != row and trow[col] != 0:
            f = trow[col]
            tableau[i] = [a - f * p for a, p in zip(trow, prow)]
    basis[row] = col


def _reduced_cost(tableau, basis, cost, col) -> Fraction:
    return cost[col] - sum(
        cost[basis[i]] * tableau[i][col] for i in range(len(tableau))
    )


def _simplex(tableau, basis, cost, allowed_cols) -> str:
    """Minimize ``cost`` over the current standard-form tableau (Bland)."""
    while True:
        entering = None
        for j in range(allowed_cols):
            if _reduced_cost(tableau, basis, cost, j) < 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        leave = None
        best = None
        for i, trow in enumerate(tableau):
            if trow[entering] > 0:
                ratio = trow[-1] / trow[entering]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tableau, basis, leave, entering)


def _solve_standard(rows: list[list[Fraction]], rhs: list[Fraction], cost: list[Fraction]):
    """min cost.z  s.t.  rows z = rhs, z >= 0.   Returns (status, z, value)."""
    m = len(rows)
    ncols = len(cost)
    tableau: list[list[Fraction]] = []
    for i in range(m):
        flip = rhs[i] < 0
        base = [-a for a in rows[i]] if flip else list(rows[i])
        art = [ZERO] * m
        art[i] = ONE
        tableau.append(base + art + [-rhs[i] if flip else rhs[i]])
    basis = [ncols + i for i in range(m)]
    phase1 = [ZERO] * ncols + [ONE] * m

    _simplex(tableau, basis, phase1, ncols + m)
    residual = sum(phase1[basis[i]] * tableau[i][-1] for i in range(m))
    if residual != 0:
        return INFEASIBLE, None, None

    # Drive leftover artificials out of the basis; rows with no real pivot
    # are redundant and stay parked at value zero.
    for i in range(m):
        if basis[i] >= ncols:
            col = next((j for j in range(ncols) if tableau[i][j] != 0), None)
            if col is not None:
                _pivot(tableau, basis, i, col)

    status = _simplex(tableau, basis, list(cost) + [ZERO] * m, ncols)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    z = [ZERO] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            z[b] = tableau[i][-1]
    value = sum((cost[j] * z[j] for j in range(ncols)), ZERO)
    return OPTIMAL, z, value


def solve_raw(
    ineq_matrix: Matrix,
    ineq_rhs: Vec,
    eq_matrix: Matrix,
    eq_rhs: Vec,
    n: int,
    cost: Vec,
    maximize: bool = False,
) -> LPResult:
    """Optimize ``cost . x`` over ``{x : A x <= b, E x = d}`` (x free)."""
    if n == 0:
        feasible = all(b >= 0 for b in ineq_rhs) and all(d == 0 for d in eq_rhs)
        return LPResult(OPTIMAL, (), ZERO) if feasible else LPResult(INFEASIBLE)

    m = len(ineq_matrix)
    # z = (x+, x-, slack); x = x+ - x-.
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, arow in enumerate(ineq_matrix):
        slack = [ZERO] * m
        slack[i] = ONE
        rows.append(list(arow) + [-a for a in arow] + slack)
        rhs.append(ineq_rhs[i])
    for i, erow in enumerate(eq_matrix):
        rows.append(list(erow) + [-a for a in erow] + [ZERO] * m)
        rhs.append(eq_rhs[i])

    sense = -1 if maximize else 1
    cost_std = [sense * c for c in cost] + [-sense * c for c in cost] + [ZERO] * m
    status, z, value = _solve_standard(rows, rhs, cost_std)
    if status != OPTIMAL:
        return LPResult(status)
    x = tuple(z[j] - z[n + j] for j in range(n))
    return LPResult(OPTIMAL, x, dot(cost, x))


def feasible_raw(ineq_matrix, ineq_rhs, eq_matrix, eq_rhs, n) -> LPResult:
    zero = tuple(ZERO for _ in range(n))
    return solve_raw(ineq_matrix, ineq_rhs, eq_matrix, eq_rhs, n, zero)
