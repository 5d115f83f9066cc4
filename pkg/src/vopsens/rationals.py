"""Exact rational scalars and small dense rational linear algebra.

All exact computation in the library runs on ``fractions.Fraction``,
which already guarantees the canonical reduced form (positive
denominator, gcd 1).  Vectors are tuples of fractions and matrices are
tuples of such tuples; everything is immutable and hashable.

The linear algebra here is deliberately small-scale: reduced row
echelon, rank, null spaces and square solves on matrices with at most
a handful of rows, as needed by polyhedral computations in dimension
six or less.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
Vec = tuple[Fraction, ...]
Matrix = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce a number-like value to an exact ``Fraction``.

    Accepted forms: ``Fraction``, ``int``, strings such as ``"3"``,
    ``"-1/3"`` or ``"0.25"``, and floats.  Floats are read through their
    shortest round-trip decimal representation, so ``rat(0.1) == 1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Force the plain-float repr so numpy scalars parse too.
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "item"):
        return rat(value.item())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def vec(values: Iterable) -> Vec:
    return tuple(rat(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def format_rat(q: Fraction) -> str:
    """Serialize as ``"num"`` or ``"num/den"`` (exact round trip)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(t: Fraction, u: Sequence[Fraction]) -> Vec:
    return tuple(t * a for a in u)


def vneg(u: Sequence[Fraction]) -> Vec:
    return tuple(-a for a in u)


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_t(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m, strict=True))


def mat_t_vec(m: Matrix, v: Sequence[Fraction]) -> Vec:
    """Transpose-times-vector without materializing the transpose."""
    if not m:
        return ()
    n = len(m[0])
    return tuple(
        sum((row[j] * x for row, x in zip(m, v, strict=True)), ZERO)
        for j in range(n)
    )


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, j: int) -> Vec:
    return tuple(ONE if i == j else ZERO for i in range(n))


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    rows = [list(r) for r in m]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, dim: int | None = None) -> list[Vec]:
    """Basis of {x : m x = 0}. ``dim`` is required when ``m`` is empty."""
    if not m:
        if dim is None:
            raise ValueError("nullspace of an empty matrix needs a dimension")
        return [unit(dim, j) for j in range(dim)]
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for i, pc in enumerate(pivots):
            x[pc] = -red[i][fc]
        basis.append(tuple(x))
    return basis


def solve_square(m: Matrix, b: Sequence[Fraction]) -> Vec | None:
    """Solve m x = b for square m; None when m is singular."""
    n = len(m)
    aug = mat(tuple(tuple(m[i]) + (b[i],) for i in range(n)))
    red, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        return None
    return tuple(red[i][n] for i in range(n))


def det(m: Matrix) -> Fraction:
    """Exact determinant by fraction-preserving Gaussian elimination."""
    n = len(m)
    if n == 0:
        return ONE
    rows = [list(r) for r in m]
    sign = ONE
    result = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        pv = rows[c][c]
        result *= pv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return sign * result


def primitive(u: Sequence[Fraction]) -> Vec:
    """Scale a nonzero rational vector to coprime integers (same direction)."""
    from math import gcd, lcm

    if is_zero_vec(u):
        return tuple(ZERO for _ in u)
    denom = lcm(*(a.denominator for a in u))
    ints = [a.numerator * (denom // a.denominator) for a in u]
    g = gcd(*ints)
    return tuple(Fraction(i // g) for i in ints)


def as_float_vec(u: Sequence) -> tuple[float, ...]:
    return tuple(float(a) for a in u)
