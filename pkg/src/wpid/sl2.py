"""The sl2 generators as derivations on the symbol algebra.

The raising/lowering/grading operators act on curve coefficients, on the
curve variables and their point copies, and on the wp symbols:

    e: x -> 1,     y -> 0,           a_i -> -(2g+2-i) a_{i+1}
    f: x -> -x^2,  y -> -(g+1) x y,  a_i -> -i a_{i-1}
    h: x -> -2x,   y -> -(g+1) y,    a_i -> (2i-2g-2) a_i

and on a wp index position carrying index i,

    e: i -> i+1 with factor -i        (dropped when i+1 > g)
    f: i -> i-1 with factor -(g-i+1)  (dropped when i-1 < 1)

summed over index positions.  h is fixed as the commutator [e, f]; with that
choice the full commutator table and the weight homogeneity of the curve
polynomial hold exactly, which check_commutators verifies symbol by symbol.
Border symbols l_i, k_i and the root marker are annihilated by all three.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import symbols as S
from .poly import Poly, mon_key


class UnsupportedGenus(ValueError):
    pass


class NotHighestWeight(ValueError):
    pass


class DimensionExceeded(RuntimeError):
    pass


def _check_genus(g: int):
    if g not in (1, 2, 3):
        raise UnsupportedGenus(g)


@dataclass(frozen=True, eq=False)
class Derivation:
    """A named linear operator given by generator images plus Leibniz extension."""

    name: str
    genus: int
    images: dict  # sid -> Poly
    weight_shift: int = 0

    def image(self, sid: int) -> Poly:
        return self.images.get(sid, Poly.zero())

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)


def apply(D: Derivation, p: Poly) -> Poly:
    """Leibniz extension of the generator images to any polynomial."""
    out = Poly()
    images = D.images
    for mon, coeff in p.terms.items():
        for pos, (sid, e) in enumerate(mon):
            img = images.get(sid)
            if img is None or img.is_zero():
                continue
            rest = list(mon)
            if e == 1:
                del rest[pos]
            else:
                rest[pos] = (sid, e - 1)
            partial = Poly({tuple(rest): coeff * e})
            out = out + partial * img
    return out


def _wp_shift(idx: tuple, g: int, direction: int):
    """Images of a wp index tuple under e (direction +1) or f (direction -1)."""
    out = Poly()
    for pos, i in enumerate(idx):
        j = i + direction
        if not 1 <= j <= g:
            continue
        factor = -i if direction == 1 else -(g - i + 1)
        new = tuple(sorted(idx[:pos] + (j,) + idx[pos + 1 :]))
        out = out + Poly.sym(S.wp(*new), 1, factor)
    return out


def wp_weight(idx: tuple, g: int) -> int:
    return 2 * sum(idx) - len(idx) * (g + 1)


@lru_cache(maxsize=None)
def make_generators(g: int):
    """The raising, lowering, and grading derivations for genus g."""
    _check_genus(g)
    n = 2 * g + 2
    e_img: dict[int, Poly] = {}
    f_img: dict[int, Poly] = {}
    h_img: dict[int, Poly] = {}

    for i in range(n + 1):
        sa = S.a(i)
        if i < n:
            e_img[sa.sid] = Poly.sym(S.a(i + 1), 1, -(n - i))
        if i > 0:
            f_img[sa.sid] = Poly.sym(S.a(i - 1), 1, -i)
        h_img[sa.sid] = Poly.sym(sa, 1, 2 * i - n)

    def point_rules(xs: S.Symbol, ys: S.Symbol):
        e_img[xs.sid] = Poly.const(1)
        f_img[xs.sid] = Poly.sym(xs, 2, -1)
        h_img[xs.sid] = Poly.sym(xs, 1, -2)
        f_img[ys.sid] = Poly({((xs.sid, 1), (ys.sid, 1)): Fraction(-(g + 1))})
        h_img[ys.sid] = Poly.sym(ys, 1, -(g + 1))

    point_rules(S.xvar(), S.yvar())
    for m in range(1, g + 1):
        point_rules(S.xm(m), S.ym(m))

    for sym in S.SYMBOLS:
        if sym.kind == "wp" and all(1 <= i <= g for i in sym.data):
            e_img[sym.sid] = _wp_shift(sym.data, g, +1)
            f_img[sym.sid] = _wp_shift(sym.data, g, -1)
            w = wp_weight(sym.data, g)
            if w:
                h_img[sym.sid] = Poly.sym(sym, 1, w)

    e = Derivation("e", g, e_img, +2)
    f = Derivation("f", g, f_img, -2)
    h = Derivation("h", g, h_img, 0)
    return e, f, h


def du_derivation(g: int, k: int) -> Derivation:
    """d/du_k on the wp symbol algebra: appends index k, annihilates a_i."""
    _check_genus(g)
    assert 1 <= k <= g
    img: dict[int, Poly] = {}
    for sym in S.SYMBOLS:
        if sym.kind == "wp" and len(sym.data) <= 3 and all(i <= g for i in sym.data):
            img[sym.sid] = Poly.sym(S.wp(*(sym.data + (k,))))
    return Derivation("du%d" % k, g, img, 2 * k - (g + 1))


def point_derivation(g: int, m: int) -> Derivation:
    """y_m d/dx_m in its u-expansion: wp_T -> sum_k x_m^(k-1) wp_{T,k}."""
    _check_genus(g)
    assert 1 <= m <= g
    img: dict[int, Poly] = {}
    xs = S.xm(m)
    for sym in S.SYMBOLS:
        if sym.kind == "wp" and len(sym.data) <= 3 and all(i <= g for i in sym.data):
            acc = Poly()
            for k in range(1, g + 1):
                acc = acc + Poly.sym(S.wp(*(sym.data + (k,)))) * Poly.sym(xs, k - 1)
            img[sym.sid] = acc
    # action on the point coordinates themselves: x_m -> y_m, y_m -> a'(x_m)/2
    img[xs.sid] = Poly.sym(S.ym(m))
    from math import comb

    n = 2 * g + 2
    ap = Poly()
    for i in range(1, n + 1):
        ap = ap + Poly.sym(S.a(i), 1, Fraction(comb(n, i) * i, 2)) * Poly.sym(xs, i - 1)
    img[S.ym(m).sid] = ap
    return Derivation("yd%d" % m, g, img)


def commutator(D1: Derivation, D2: Derivation, p: Poly) -> Poly:
    return apply(D1, apply(D2, p)) - apply(D2, apply(D1, p))


def generator_symbols(g: int) -> list[S.Symbol]:
    """Every symbol the genus-g generators act on (or annihilate)."""
    out = [S.a(i) for i in range(2 * g + 3)]
    out += [s for s in S.SYMBOLS if s.kind == "wp" and all(i <= g for i in s.data)]
    out += [S.xvar(), S.yvar()]
    for m in range(1, g + 1):
        out += [S.xm(m), S.ym(m)]
    out += [S.border_l(i) for i in range(g + 2)]
    out += [S.border_k(i) for i in range(g + 2)]
    out.append(S.root())
    return out


def check_commutators(g: int) -> list[tuple[str, str, bool]]:
    """Verify [h,e]=2e, [h,f]=-2f, [e,f]=h on every generator symbol."""
    e, f, h = make_generators(g)
    report = []
    for sym in generator_symbols(g):
        p = Poly.sym(sym)
        checks = [
            ("[h,e]=2e", commutator(h, e, p) - apply(e, p).scale(2)),
            ("[h,f]=-2f", commutator(h, f, p) + apply(f, p).scale(2)),
            ("[e,f]=h", commutator(e, f, p) - apply(h, p)),
        ]
        for label, residual in checks:
            report.append((sym.name, label, residual.is_zero()))
    return report


def weight(p: Poly, g: int):
    """h-eigenvalue of p, or None when p is not an h-eigenvector."""
    if p.is_zero():
        return None
    _, _, h = make_generators(g)
    hp = apply(h, p)
    mon, c = p.leading()
    w = hp.terms.get(mon, Fraction(0)) / c
    if hp == p.scale(w) and w.denominator == 1:
        return int(w)
    return None


@dataclass
class Multiplet:
    """An f-chain of raw lowering images starting from a highest weight vector."""

    members: list  # list[Poly], members[0] = highest weight
    genus: int

    @property
    def dimension(self) -> int:
        return len(self.members)


def generate_multiplet(hw: Poly, g: int, max_dim: int = 32) -> Multiplet:
    e, f, _ = make_generators(g)
    if not apply(e, hw).is_zero():
        raise NotHighestWeight("e-image is nonzero")
    members = [hw]
    cur = hw
    for _ in range(max_dim):
        cur = apply(f, cur)
        if cur.is_zero():
            return Multiplet(members, g)
        members.append(cur)
    raise DimensionExceeded("f-chain did not terminate within %d" % max_dim)


def proportionality(p: Poly, q: Poly):
    """Fraction c with q == c*p, or None. p must be nonzero."""
    if p.is_zero():
        return None
    if q.is_zero():
        return Fraction(0)
    mon, cp = p.leading()
    cq = q.terms.get(mon)
    if cq is None:
        return None
    c = cq / cp
    return c if q == p.scale(c) else None


# ---------------------------------------------------------------- span tools


class SpanBasis:
    """Echelonized rational span of a set of polynomials over the monomial basis."""

    def __init__(self, polys=()):
        self.rows: dict[tuple, Poly] = {}  # pivot monomial -> reduced poly
        for p in polys:
            self.add(p)

    def reduce(self, p: Poly) -> Poly:
        while not p.is_zero():
            mon, c = p.leading()
            row = self.rows.get(mon)
            if row is None:
                return p
            p = p - row.scale(c)
        return p

    def add(self, p: Poly) -> bool:
        """Insert p; returns True when p enlarged the span."""
        p = self.reduce(p)
        if p.is_zero():
            return False
        mon, c = p.leading()
        self.rows[mon] = p.scale(Fraction(1) / c)
        return True

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    @property
    def dimension(self) -> int:
        return len(self.rows)


def closure_check(polys: list[Poly], D: Derivation) -> list[tuple[int, bool]]:
    """For each member, whether its image under D stays in the rational span."""
    basis = SpanBasis(polys)
    return [(i, basis.contains(apply(D, p))) for i, p in enumerate(polys)]


def span_dimension(polys: list[Poly]) -> int:
    return SpanBasis(polys).dimension
