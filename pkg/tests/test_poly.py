from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wpid import symbols as S
from wpid.poly import (
    Poly,
    NotDivisible,
    exact_div,
    multiplicity,
    parse_text,
    poly_sum,
)


def sym(name):
    return Poly.sym(S.by_name(name))


X = lambda: sym("x")
A = lambda i: sym("a%d" % i)


def test_difference_of_squares():
    x = X()
    assert (x + 1) * (x - 1) == x * x - 1


def test_additive_inverse():
    p = A(0) * X() ** 2 - Poly.const(Fraction(3, 7)) * sym("wp[1,1]")
    assert (p + (-p)).is_zero()


def test_binomial_expansion():
    p = A(0) + A(1) * X() * 2
    expect = A(0) ** 2 + A(0) * A(1) * X() * 4 + A(1) ** 2 * X() ** 2 * 4
    assert p * p == expect


def test_substitute_shift():
    w11 = sym("wp[1,1]")
    target = w11 + A(2) * 3  # stands in for the shifted symbol
    got = (w11 ** 2).substitute({S.by_name("wp[1,1]"): target})
    assert got == target * target


def test_substitute_empty_and_kill():
    p = X() * sym("y")
    assert p.substitute({}) == p
    assert p.substitute({S.by_name("x"): Poly.zero()}).is_zero()


def test_coeff_extract_basic():
    p = A(0) + A(1) * X() ** 2 * 3
    assert p.coeff_extract(S.by_name("x"), 2) == A(1) * 3
    assert p.coeff_extract(S.by_name("wp[1,1]"), 3).is_zero()


def test_exact_div():
    x, x1 = X(), sym("x1")
    assert exact_div(x * x - x1 * x1, x - x1) == x + x1
    p = A(0) * X() + Poly.const(5)
    assert exact_div(p, Poly.const(1)) == p
    with pytest.raises(NotDivisible):
        exact_div(x + 1, x)


def test_multiplicity():
    x, x1 = X(), sym("x1")
    p = (x - x1) ** 3 * (x + x1)
    assert multiplicity(p, x - x1) == 3


# -- randomized structure tests --------------------------------------------

_syms = [S.by_name(n) for n in ("a0", "a1", "x", "x1", "wp[1,1]", "wp[1,2]")]


@st.composite
def polys(draw, max_terms=6):
    n = draw(st.integers(0, max_terms))
    p = Poly()
    for _ in range(n):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 7)))
        mon = Poly.const(1)
        for s in draw(st.lists(st.sampled_from(_syms), max_size=3)):
            mon = mon * Poly.sym(s, draw(st.integers(1, 3)))
        p = p + mon.scale(c)
    return p


@settings(max_examples=400, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=200, deadline=None)
@given(polys(), polys())
def test_mul_div_roundtrip(p, q):
    if q.is_zero():
        return
    assert exact_div(p * q, q) == p


@settings(max_examples=200, deadline=None)
@given(polys())
def test_serialize_parse_roundtrip(p):
    text = p.to_text()
    assert parse_text(text).to_text() == text


def test_coeff_reassembly_random():
    import random

    rng = random.Random(7)
    terms = {}
    names = ["a0", "a1", "a2", "x", "x1", "wp[1,1]", "wp[2,2]"]
    p = Poly()
    for _ in range(50):
        mon = Poly.const(Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 9)))
        for name in rng.sample(names, rng.randint(0, 3)):
            mon = mon * Poly.sym(S.by_name(name), rng.randint(1, 4))
        p = p + mon
    s = S.by_name("x")
    reassembled = poly_sum(
        p.coeff_extract(s, d) * Poly.sym(s, d) if d else p.coeff_extract(s, 0)
        for d in range(p.degree_in(s) + 1)
    )
    assert reassembled == p


def test_canonical_text_example():
    p = Poly.sym(S.by_name("wp[1,1,1]"), 2, Fraction(-1, 4)) * A(0)
    assert p.to_text() == "-1/4*a0*wp[1,1,1]^2"
    assert parse_text(p.to_text()) == p
