import random
from fractions import Fraction

import pytest

from wpid import symbols as S
from wpid.matrix import (
    IndexOutOfRange,
    NonSquare,
    PolyMatrix,
    assemble_bordered,
    bordered_det_two,
    det_bareiss,
    det_cofactor,
    determinant,
    minor,
)
from wpid.poly import Poly, parse_text


def P(t):
    return parse_text(t)


def test_det_small():
    m = PolyMatrix.from_rows([[P("x"), P("1")], [P("1"), P("x")]])
    assert determinant(m) == P("x^2 - 1")
    assert determinant(PolyMatrix.identity(4)) == P("1")


def test_nonsquare_and_range():
    m = PolyMatrix.from_rows([[P("1"), P("2")]])
    with pytest.raises(NonSquare):
        determinant(m)
    sq = PolyMatrix.identity(3)
    with pytest.raises(IndexOutOfRange):
        minor(sq, {5}, {0})


def test_minor_conventions():
    m = PolyMatrix.identity(3)
    assert minor(m, {1}, {1}) == P("1")
    assert minor(m, set(), set()) == determinant(m)


def _random_matrix(rng, n):
    return PolyMatrix.from_rows(
        [
            [Poly.const(rng.randint(-4, 4)) for _ in range(n)]
            for _ in range(n)
        ]
    )


def _random_poly_matrix(rng, n):
    syms = [S.by_name(s) for s in ("x", "x1", "a0")]
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            p = Poly.const(rng.randint(-3, 3))
            if rng.random() < 0.6:
                p = p + Poly.sym(rng.choice(syms), rng.randint(1, 2),
                                 rng.randint(-2, 2))
            row.append(p)
        rows.append(row)
    return PolyMatrix.from_rows(rows)


def test_bareiss_vs_cofactor_agreement():
    rng = random.Random(11)
    for n in range(1, 6):
        for _ in range(6):
            m = _random_poly_matrix(rng, n)
            assert det_bareiss(m) == det_cofactor(m)


def test_genus1_klein_determinant_split():
    from wpid.curves import klein_matrix

    h = klein_matrix(1)
    killed = PolyMatrix.from_rows(
        [
            [h.mat.at(i, j).substitute({S.wp(1, 1): Poly.zero()})
             for j in range(3)]
            for i in range(3)
        ]
    )
    assert det_bareiss(killed) == det_cofactor(killed)
    full = determinant(h.mat).substitute({S.wp(1, 1): Poly.zero()})
    assert full == determinant(killed)


def test_bordered_two_matches_direct_determinant():
    rng = random.Random(5)
    n = 5
    h = _random_matrix(rng, n)
    # symmetrize
    h = PolyMatrix.from_rows(
        [[h.at(min(i, j), max(i, j)) for j in range(n)] for i in range(n)]
    )
    lvec = [Poly.const(rng.randint(-3, 3)) for _ in range(n)]
    kvec = [Poly.const(rng.randint(-3, 3)) for _ in range(n)]
    direct = determinant(assemble_bordered(h, [lvec, kvec]))
    laplace = bordered_det_two(h, lvec, kvec)
    assert direct == laplace
