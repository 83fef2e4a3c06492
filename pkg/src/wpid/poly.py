"""Sparse multivariate polynomials over exact rationals.

A monomial is a tuple of (sid, exponent) pairs sorted by symbol id, with no
zero exponents.  A Poly maps monomials to nonzero Fractions; two equal
polynomials always hold identical term dicts, which makes the textual
serialization canonical (serialize -> parse -> serialize is the identity).

Monomial order everywhere is degree-lexicographic over the global symbol
interning order of :mod:`wpid.symbols`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .symbols import NSYM, SYMBOLS, Symbol, by_name

Mon = tuple  # ((sid, exp), ...)

EMPTY_MON: Mon = ()


class NotDivisible(ArithmeticError):
    """Exact polynomial division was requested but leaves a remainder."""


def mon_mul(m1: Mon, m2: Mon) -> Mon:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        s1, e1 = m1[i]
        s2, e2 = m2[j]
        if s1 == s2:
            out.append((s1, e1 + e2))
            i += 1
            j += 1
        elif s1 < s2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mon_degree(m: Mon) -> int:
    return sum(e for _, e in m)


def mon_divides(m1: Mon, m2: Mon) -> bool:
    """True when m1 divides m2."""
    d2 = dict(m2)
    return all(d2.get(s, 0) >= e for s, e in m1)


def mon_div(m2: Mon, m1: Mon) -> Mon:
    """m2 / m1, assuming divisibility."""
    d = dict(m2)
    for s, e in m1:
        r = d[s] - e
        if r:
            d[s] = r
        else:
            del d[s]
    return tuple(sorted(d.items()))


def mon_key(m: Mon):
    """Degree-lexicographic sort key (bigger key = later in the order)."""
    vec = [0] * NSYM
    for s, e in m:
        vec[s] = e
    return (mon_degree(m), tuple(vec))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mon, Fraction] | None = None):
        self.terms: dict[Mon, Fraction] = dict(terms) if terms else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly({EMPTY_MON: c}) if c else Poly()

    @staticmethod
    def sym(s: Symbol, exp: int = 1, coeff=1) -> "Poly":
        coeff = Fraction(coeff)
        if not coeff:
            return Poly()
        if exp == 0:
            return Poly.const(coeff)
        return Poly({((s.sid, exp),): coeff})

    # -- basics -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def copy(self) -> "Poly":
        return Poly(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "Poly(%s)" % self.to_text()

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[Mon, Fraction] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mon_mul(m1, m2)
                nc = get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    del out[m]
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly()
        return Poly({m: cc * c for m, cc in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure ----------------------------------------------------

    def symbols(self) -> set[int]:
        out = set()
        for m in self.terms:
            for s, _ in m:
                out.add(s)
        return out

    def degree_in(self, s: Symbol) -> int:
        sid = s.sid
        best = 0
        for m in self.terms:
            for ss, e in m:
                if ss == sid and e > best:
                    best = e
        return best

    def total_degree(self) -> int:
        return max((mon_degree(m) for m in self.terms), default=0)

    def coeff_extract(self, s: Symbol, d: int) -> "Poly":
        """Polynomial coefficient of s**d, so p == sum_d coeff(s,d) * s**d."""
        sid = s.sid
        out = {}
        for m, c in self.terms.items():
            dm = dict(m)
            if dm.pop(sid, 0) == d:
                out[tuple(sorted(dm.items()))] = c
        return Poly(out)

    def substitute(self, bindings: Mapping[Symbol, "Poly"]) -> "Poly":
        """Simultaneous substitution; symbols absent from bindings unchanged."""
        if not bindings:
            return self
        byid = {s.sid: p for s, p in bindings.items()}
        powers: dict[tuple[int, int], Poly] = {}

        def power(sid, e):
            key = (sid, e)
            if key not in powers:
                powers[key] = byid[sid] ** e
            return powers[key]

        out = Poly()
        for m, c in self.terms.items():
            keep = []
            factor = None
            for sid, e in m:
                if sid in byid:
                    p = power(sid, e)
                    factor = p if factor is None else factor * p
                else:
                    keep.append((sid, e))
            term = Poly({tuple(keep): c})
            out = out + (term * factor if factor is not None else term)
        return out

    def leading(self) -> tuple[Mon, Fraction]:
        m = max(self.terms, key=mon_key)
        return m, self.terms[m]

    def constant_term(self) -> Fraction:
        return self.terms.get(EMPTY_MON, Fraction(0))

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        from math import gcd, lcm

        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    # -- serialization ------------------------------------------------

    def sorted_terms(self) -> list[tuple[Mon, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: mon_key(t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            body = "*".join(
                SYMBOLS[s].name if e == 1 else "%s^%d" % (SYMBOLS[s].name, e)
                for s, e in m
            )
            mag = abs(c)
            if not body:
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = "%s*%s" % (mag, body)
            if not parts:
                parts.append(chunk if c > 0 else "-" + chunk)
            else:
                parts.append(("+ " if c > 0 else "- ") + chunk)
        return " ".join(parts)

    def to_json_terms(self) -> list:
        """Language-neutral exact term list: [[num, den, [[kind, data, exp], ...]], ...]."""
        out = []
        for m, c in self.sorted_terms():
            syms = []
            for s, e in m:
                sym = SYMBOLS[s]
                if sym.kind == "wp":
                    syms.append(["wp", list(sym.data), e])
                elif sym.kind in ("x", "y", "r"):
                    syms.append([sym.kind, 0, e])
                elif sym.kind == "xm":
                    syms.append(["x", sym.data[0], e])
                elif sym.kind == "ym":
                    syms.append(["y", sym.data[0], e])
                else:
                    syms.append([sym.kind, sym.data[0], e])
            out.append([c.numerator, c.denominator, syms])
        return out

    def to_latex(self) -> str:
        if not self.terms:
            return "0"

        def sym_tex(s, e):
            sym = SYMBOLS[s]
            if sym.kind == "a":
                base = "a_{%d}" % sym.data[0]
            elif sym.kind == "wp":
                base = "\\wp_{%s}" % "".join(str(i) for i in sym.data)
            elif sym.kind == "xm":
                base = "x_{%d}" % sym.data[0]
            elif sym.kind == "ym":
                base = "y_{%d}" % sym.data[0]
            elif sym.kind in ("l", "k"):
                base = "%s_{%d}" % (sym.kind, sym.data[0])
            else:
                base = sym.name
            return base if e == 1 else "%s^{%d}" % (base, e)

        parts = []
        for m, c in self.sorted_terms():
            body = " ".join(sym_tex(s, e) for s, e in m)
            mag = abs(c)
            if mag.denominator == 1:
                coeff = str(mag.numerator)
            else:
                coeff = "\\tfrac{%d}{%d}" % (mag.numerator, mag.denominator)
            if body and coeff == "1":
                chunk = body
            elif body:
                chunk = coeff + " " + body
            else:
                chunk = coeff
            if not parts:
                parts.append(chunk if c > 0 else "-" + chunk)
            else:
                parts.append(("+ " if c > 0 else "- ") + chunk)
        return " ".join(parts)


def _coerce(v) -> Poly:
    if isinstance(v, Poly):
        return v
    return Poly.const(v)


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*)?)?((?:[a-z][^*]*)(?:\*[a-z][^*]*)*)?$")


def parse_text(text: str) -> Poly:
    """Parse the canonical textual form produced by :meth:`Poly.to_text`."""
    text = text.strip()
    if text == "0":
        return Poly()
    out = Poly()
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    for piece in re.split(r" ([+-]) ", text):
        piece = piece.strip()
        if piece == "+":
            sign = 1
            continue
        if piece == "-":
            sign = -1
            continue
        m = _TERM_RE.match(piece)
        if not m:
            raise ValueError("cannot parse term %r" % piece)
        coeff_s, body = m.groups()
        coeff = Fraction(coeff_s) if coeff_s else Fraction(1)
        mon = EMPTY_MON
        if body:
            factors = []
            for f in body.split("*"):
                if "^" in f:
                    name, e = f.split("^")
                    factors.append((by_name(name).sid, int(e)))
                else:
                    factors.append((by_name(f).sid, 1))
            mon = tuple(sorted(factors))
        out = out + Poly({mon: sign * coeff})
    return out


def poly_sum(ps: Iterable[Poly]) -> Poly:
    out = Poly()
    for p in ps:
        out = out + p
    return out


def exact_div(p: Poly, q: Poly) -> Poly:
    """Exact division p / q in the polynomial ring.

    Raises NotDivisible when q does not divide p.  Leading-term reduction is
    complete for exact division with a single divisor, so no remainder logic
    is needed.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return Poly()
    qm, qc = q.leading()
    rem = dict(p.terms)
    quot: dict[Mon, Fraction] = {}
    while rem:
        m = max(rem, key=mon_key)
        c = rem[m]
        if not mon_divides(qm, m):
            raise NotDivisible("remainder has leading term %s" % (m,))
        dm = mon_div(m, qm)
        dc = c / qc
        quot[dm] = quot.get(dm, 0) + dc
        for m2, c2 in q.terms.items():
            mm = mon_mul(dm, m2)
            nc = rem.get(mm, 0) - dc * c2
            if nc:
                rem[mm] = nc
            else:
                rem.pop(mm, None)
    return Poly(quot)


def divides(q: Poly, p: Poly) -> bool:
    try:
        exact_div(p, q)
        return True
    except NotDivisible:
        return False


def multiplicity(p: Poly, q: Poly) -> int:
    """Largest k with q**k dividing p (p nonzero)."""
    k = 0
    while True:
        try:
            p = exact_div(p, q)
            k += 1
        except NotDivisible:
            return k
