from fractions import Fraction as F

import pytest

from vopsens.rationals import (
    det,
    format_rat,
    mat,
    nullspace,
    primitive,
    rank,
    rat,
    rref,
    solve_square,
    vec,
)


def test_rat_parses_strings_ints_floats():
    assert rat("1/3") == F(1, 3)
    assert rat("-2") == F(-2)
    assert rat("0.25") == F(1, 4)
    assert rat(7) == F(7)
    assert rat(0.1) == F(1, 10)  # shortest round-trip decimal, not binary


def test_rat_rejects_junk():
    with pytest.raises(TypeError):
        rat(object())
    with pytest.raises(TypeError):
        rat(True)


def test_format_roundtrip():
    for q in (F(3), F(-1, 3), F(0)):
        assert rat(format_rat(q)) == q


def test_primitive_keeps_direction():
    assert primitive(vec(["1/2", "1/3"])) == vec([3, 2])
    assert primitive(vec([-2, 4])) == vec([-1, 2])


def test_rref_rank_nullspace():
    m = mat([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    ns = nullspace(m)
    assert len(ns) == 1
    v = ns[0]
    for row in m:
        assert sum(a * b for a, b in zip(row, v)) == 0
    red, pivots = rref(m)
    assert pivots == (0, 1)


def test_solve_square():
    m = mat([[2, 0], [1, 1]])
    assert solve_square(m, vec([4, 3])) == vec([2, 1])
    assert solve_square(mat([[1, 1], [2, 2]]), vec([1, 2])) is None


def test_det():
    assert det(mat([[2, 0], [0, 3]])) == 6
    assert det(mat([[1, 2], [2, 4]])) == 0
    assert det(mat([["1/2", 0], [5, "1/3"]])) == F(1, 6)
