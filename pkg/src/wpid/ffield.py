"""Exact arithmetic in the function field of a concrete curve instance.

Elements live in Q(x_1..x_g)[y_1..y_g] with every y_m^2 reduced to a(x_m).
The representation keeps one integer-coefficient polynomial numerator per
squarefree y-monomial over a single shared integer-coefficient denominator;
all rational bookkeeping is cleared into the denominator so the hot loops
run on Python ints only.

Exponent packing: x_1, x_2, x_3 occupy 21-bit fields of one int key, so a
monomial product is a single integer addition and the induced integer order
is an admissible (lexicographic) monomial order.

The fraction-normalization policy is deliberately lazy: integer content and
shared monomial factors are stripped cheaply all the time, but polynomial
gcd reduction runs only at solve-stage boundaries and before verdicts --
multivariate gcd is the cost center at genus 3.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

SHIFT = 21
MASK = (1 << SHIFT) - 1
VARBITS = [0, SHIFT, 2 * SHIFT]

XPoly = dict  # packed exponent -> int coefficient


def xp_zero() -> XPoly:
    return {}


def xp_const(c: int) -> XPoly:
    return {0: c} if c else {}


def xp_var(v: int, e: int = 1, c: int = 1) -> XPoly:
    return {e << VARBITS[v]: c} if c else {}


def unpack(key: int) -> tuple:
    return (key & MASK, (key >> SHIFT) & MASK, (key >> (2 * SHIFT)) & MASK)


def xp_add(a: XPoly, b: XPoly) -> XPoly:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    get = out.get
    for k, c in b.items():
        nc = get(k, 0) + c
        if nc:
            out[k] = nc
        else:
            del out[k]
    return out


def xp_iadd(out: XPoly, b: XPoly, scale: int = 1):
    get = out.get
    for k, c in b.items():
        nc = get(k, 0) + c * scale
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)


def xp_sub(a: XPoly, b: XPoly) -> XPoly:
    out = dict(a)
    get = out.get
    for k, c in b.items():
        nc = get(k, 0) - c
        if nc:
            out[k] = nc
        else:
            del out[k]
    return out


def xp_neg(a: XPoly) -> XPoly:
    return {k: -c for k, c in a.items()}


def xp_scale(a: XPoly, c: int) -> XPoly:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def xp_mul(a: XPoly, b: XPoly) -> XPoly:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: XPoly = {}
    get = out.get
    bi = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bi:
            k = ka + kb
            nc = get(k, 0) + ca * cb
            if nc:
                out[k] = nc
            else:
                del out[k]
    return out


def xp_content(a: XPoly) -> int:
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def xp_divscale(a: XPoly, c: int) -> XPoly:
    if c == 1:
        return a
    return {k: v // c for k, v in a.items()}


def xp_monomial_content(a: XPoly) -> int:
    """Packed key of the largest monomial dividing every term."""
    it = iter(a)
    try:
        m = next(it)
    except StopIteration:
        return 0
    e = list(unpack(m))
    for k in it:
        u = unpack(k)
        for i in range(3):
            if u[i] < e[i]:
                e[i] = u[i]
        if not any(e):
            return 0
    return (e[0]) | (e[1] << SHIFT) | (e[2] << (2 * SHIFT))


def xp_shift_down(a: XPoly, mkey: int) -> XPoly:
    if not mkey:
        return a
    return {k - mkey: c for k, c in a.items()}


def xp_deg(a: XPoly, v: int) -> int:
    if not a:
        return -1
    b = VARBITS[v]
    return max((k >> b) & MASK for k in a)


def xp_total_deg(a: XPoly) -> int:
    return max((sum(unpack(k)) for k in a), default=-1)


def xp_vars(a: XPoly) -> list:
    seen = [0, 0, 0]
    for k in a:
        u = unpack(k)
        for i in range(3):
            if u[i]:
                seen[i] = 1
    return [i for i in range(3) if seen[i]]


def xp_deriv(a: XPoly, v: int) -> XPoly:
    b = VARBITS[v]
    out: XPoly = {}
    for k, c in a.items():
        e = (k >> b) & MASK
        if e:
            out[k - (1 << b)] = c * e
    return out


def xp_divexact(p: XPoly, q: XPoly):
    """p / q over the integers, or None when not exactly divisible."""
    if not q:
        raise ZeroDivisionError
    if not p:
        return {}
    kq = max(q)
    cq = q[kq]
    uq = unpack(kq)
    rem = dict(p)
    quot: XPoly = {}
    qitems = list(q.items())
    while rem:
        kp = max(rem)
        cp = rem[kp]
        up = unpack(kp)
        if any(up[i] < uq[i] for i in range(3)):
            return None
        if cp % cq:
            return None
        kd = kp - kq
        cd = cp // cq
        quot[kd] = cd
        for k2, c2 in qitems:
            kk = kd + k2
            nc = rem.get(kk, 0) - cd * c2
            if nc:
                rem[kk] = nc
            else:
                rem.pop(kk, None)
    return quot


# ----------------------------------------------------------------- gcd

def _to_uni(a: XPoly, v: int) -> dict:
    """View as univariate in v with XPoly coefficients."""
    b = VARBITS[v]
    clear = ~(MASK << b)
    out: dict[int, XPoly] = {}
    for k, c in a.items():
        e = (k >> b) & MASK
        out.setdefault(e, {})[k & clear] = c
    return out


def _from_uni(u: dict, v: int) -> XPoly:
    b = VARBITS[v]
    out: XPoly = {}
    for e, coeff in u.items():
        for k, c in coeff.items():
            out[k | (e << b)] = c
    return out


def _uni_pseudo_rem(A: dict, B: dict, v: int, strict: bool = False) -> dict:
    """Pseudo-remainder of univariate-view polynomials (XPoly coefficients).

    With strict=True the result is the classical prem, scaled by exactly
    lc(B)^(deg A - deg B + 1) as the subresultant divisions require; the lazy
    variant skips scaling steps where the degree drops by more than one.
    """
    da = max(A)
    db = max(B)
    lb = B[db]
    R = {e: dict(c) for e, c in A.items()}
    steps = 0
    while R:
        dr = max(R)
        if dr < db:
            break
        steps += 1
        lr = R[dr]
        # R <- lb*R - lr*x^(dr-db)*B
        newR: dict[int, XPoly] = {}
        for e, c in R.items():
            if e == dr:
                continue
            newR[e] = xp_mul(c, lb)
        for e, c in B.items():
            if e == db:
                continue
            t = xp_mul(c, lr)
            tgt = e + dr - db
            if tgt in newR:
                d = xp_sub(newR[tgt], t)
            else:
                d = xp_neg(t)
            if d:
                newR[tgt] = d
            else:
                newR.pop(tgt, None)
        R = {e: c for e, c in newR.items() if c}
    if strict and steps < da - db + 1:
        scale = _xp_pow(lb, da - db + 1 - steps)
        R = {e: xp_mul(c, scale) for e, c in R.items()}
    return R


def xp_gcd(a: XPoly, b: XPoly) -> XPoly:
    """Polynomial gcd over Z, positive leading coefficient.

    Subresultant PRS with a trial-division certificate: the PRS yields a
    candidate divisor up to content; if it divides both inputs it is the
    gcd of the primitive parts, otherwise fall back to the slow primitive
    PRS with full content recursion.
    """
    if not a:
        return _normalize_sign(dict(b))
    if not b:
        return _normalize_sign(dict(a))
    ma, mb = xp_monomial_content(a), xp_monomial_content(b)
    ua, ub = unpack(ma), unpack(mb)
    mg = (
        min(ua[0], ub[0])
        | (min(ua[1], ub[1]) << SHIFT)
        | (min(ua[2], ub[2]) << (2 * SHIFT))
    )
    a = xp_shift_down(a, ma)
    b = xp_shift_down(b, mb)
    ca, cb = xp_content(a), xp_content(b)
    cg = gcd(ca, cb)
    a = xp_divscale(a, ca)
    b = xp_divscale(b, cb)
    g = _gcd_inner(a, b)
    g = xp_scale(g, cg)
    if mg:
        g = {k + mg: c for k, c in g.items()}
    return _normalize_sign(g)


def _normalize_sign(a: XPoly) -> XPoly:
    if a and a[max(a)] < 0:
        return xp_neg(a)
    return a


def _gcd_inner(a: XPoly, b: XPoly) -> XPoly:
    if a == b:
        return dict(a)
    if len(a) == 1 or len(b) == 1:
        # monomial contents were stripped; a bare monomial forces gcd 1
        return xp_const(1)
    va, vb = xp_vars(a), xp_vars(b)
    common = [v for v in va if v in vb]
    if not common:
        return xp_const(1)
    if xp_total_deg(a) >= xp_total_deg(b):
        if xp_divexact(a, b) is not None:
            return dict(b)
    else:
        if xp_divexact(b, a) is not None:
            return dict(a)
    v = min(common, key=lambda vv: max(xp_deg(a, vv), xp_deg(b, vv)))
    cand = _subresultant_last(a, b, v)
    if cand is not None:
        cand = xp_shift_down(cand, xp_monomial_content(cand))
        cand = xp_divscale(cand, xp_content(cand) or 1)
        if len(cand) == 1 and 0 in cand:
            return xp_const(1)
        if xp_divexact(a, cand) is not None and xp_divexact(b, cand) is not None:
            return cand
    return _gcd_primitive(a, b, v)


def _subresultant_last(a: XPoly, b: XPoly, v: int):
    """Last nonzero member of the subresultant PRS in variable v, or None
    when the sequence ends at degree zero (coprime primitive parts)."""
    A, B = _to_uni(a, v), _to_uni(b, v)
    if max(A) < max(B):
        A, B = B, A
    g: XPoly = xp_const(1)
    h: XPoly = xp_const(1)
    while True:
        da, db = max(A), max(B)
        if db == 0:
            # primitive parts coprime in v (their contents are not tracked
            # here; callers verify candidates by trial division)
            return xp_const(1)
        delta = da - db
        R = _uni_pseudo_rem(A, B, v, strict=True)
        if not R:
            return _from_uni(B, v)
        divisor = xp_mul(g, _xp_pow(h, delta))
        R = {e: _strict_div(c, divisor) for e, c in R.items()}
        A, B = B, R
        g = A[max(A)]
        if delta == 0:
            pass
        elif delta == 1:
            h = dict(g)
        else:
            h = _strict_div(_xp_pow(g, delta), _xp_pow(h, delta - 1))


def _xp_pow(a: XPoly, n: int) -> XPoly:
    out = xp_const(1)
    base = a
    while n:
        if n & 1:
            out = xp_mul(out, base)
        n >>= 1
        if n:
            base = xp_mul(base, base)
    return out


def _gcd_primitive(a: XPoly, b: XPoly, v: int) -> XPoly:
    A, B = _to_uni(a, v), _to_uni(b, v)
    if max(A) < max(B):
        A, B = B, A
    contA = _list_gcd(list(A.values()))
    contB = _list_gcd(list(B.values()))
    A = {e: _strict_div(c, contA) for e, c in A.items()}
    B = {e: _strict_div(c, contB) for e, c in B.items()}
    cont = xp_gcd(contA, contB)
    while True:
        R = _uni_pseudo_rem(A, B, v)
        if not R:
            g = _from_uni(B, v)
            break
        if max(R) == 0:
            g = xp_const(1)
            break
        contR = _list_gcd(list(R.values()))
        R = {e: _strict_div(c, contR) for e, c in R.items()}
        A, B = B, R
    g = xp_divscale(g, xp_content(g) or 1)
    return xp_mul(cont, g)


def _list_gcd(polys: list) -> XPoly:
    g = polys[0]
    for p in polys[1:]:
        g = xp_gcd(g, p)
        if len(g) == 1 and 0 in g and abs(g[0]) == 1:
            return xp_const(1)
    return _normalize_sign(dict(g))


def _strict_div(p: XPoly, q: XPoly) -> XPoly:
    r = xp_divexact(p, q)
    assert r is not None, "content division must be exact"
    return r


# --------------------------------------------------------------- FieldElem

class DegenerateInstance(ArithmeticError):
    pass


class FieldContext:
    """Shared data of one curve instance.

    To keep every coefficient an integer, the y generators are rescaled by
    the common denominator D of the curve coefficients: the stored
    components multiply monomials in yhat_m = D*y_m, whose reduction
    polynomial H_m = D^2 a(x_m) = D * (cleared a)(x_m) is integral.
    """

    __slots__ = ("genus", "aden", "ax", "axd", "r", "known_factors")

    def __init__(self, genus: int, acoeffs, r: Fraction):
        from math import comb, lcm

        self.genus = genus
        n = 2 * genus + 2
        den = 1
        for q in acoeffs:
            den = lcm(den, Fraction(q).denominator)
        ints = [int(Fraction(q) * den) for q in acoeffs]
        self.aden = den
        self.ax = []
        self.axd = []
        for m in range(genus):
            p = {}
            for i, ai in enumerate(ints):
                c = comb(n, i) * ai * den
                if c:
                    p[i << VARBITS[m]] = c
            self.ax.append(p)
            self.axd.append(xp_deriv(p, m))
        self.r = Fraction(r)
        # frequent denominator factors, stripped cheaply before any gcd
        self.known_factors = []
        for i in range(genus):
            for j in range(i + 1, genus):
                self.known_factors.append(
                    {1 << VARBITS[i]: 1, 1 << VARBITS[j]: -1}
                )


class FieldElem:
    __slots__ = ("ctx", "comps", "den")

    def __init__(self, ctx: FieldContext, comps: dict, den: XPoly):
        self.ctx = ctx
        self.comps = comps      # ymask -> XPoly, no empty values
        self.den = den          # XPoly, nonzero

    # ---------------- constructors

    @staticmethod
    def const(ctx, q) -> "FieldElem":
        q = Fraction(q)
        comps = {0: xp_const(q.numerator)} if q else {}
        return FieldElem(ctx, comps, xp_const(q.denominator))

    @staticmethod
    def x(ctx, m: int) -> "FieldElem":
        return FieldElem(ctx, {0: xp_var(m - 1)}, xp_const(1))

    @staticmethod
    def y(ctx, m: int) -> "FieldElem":
        # stored on the yhat basis: y_m = yhat_m / D
        return FieldElem(ctx, {1 << (m - 1): xp_const(1)}, xp_const(ctx.aden))

    # ---------------- basics

    def is_zero(self) -> bool:
        return not self.comps

    def clone(self) -> "FieldElem":
        return FieldElem(self.ctx, {k: dict(v) for k, v in self.comps.items()},
                         dict(self.den))

    def __repr__(self):
        return "FieldElem(%d comps, den %d terms)" % (len(self.comps), len(self.den))

    def size(self) -> int:
        return sum(len(v) for v in self.comps.values()) + len(self.den)

    # ---------------- arithmetic

    def __add__(self, other: "FieldElem") -> "FieldElem":
        d1, d2 = self.den, other.den
        if d1 == d2:
            comps = {k: dict(v) for k, v in self.comps.items()}
            for k, v in other.comps.items():
                s = xp_add(comps.get(k, {}), v)
                if s:
                    comps[k] = s
                else:
                    comps.pop(k, None)
            return FieldElem(self.ctx, comps, dict(d1)).light()
        q = xp_divexact(d2, d1)
        if q is not None:
            comps = {k: xp_mul(v, q) for k, v in self.comps.items()}
            for k, v in other.comps.items():
                s = xp_add(comps.get(k, {}), v)
                if s:
                    comps[k] = s
                else:
                    comps.pop(k, None)
            return FieldElem(self.ctx, comps, dict(d2)).light()
        q = xp_divexact(d1, d2)
        if q is not None:
            comps = {k: xp_mul(v, q) for k, v in other.comps.items()}
            for k, v in self.comps.items():
                s = xp_add(comps.get(k, {}), v)
                if s:
                    comps[k] = s
                else:
                    comps.pop(k, None)
            return FieldElem(self.ctx, comps, dict(d1)).light()
        comps = {k: xp_mul(v, d2) for k, v in self.comps.items()}
        for k, v in other.comps.items():
            s = xp_add(comps.get(k, {}), xp_mul(v, d1))
            if s:
                comps[k] = s
            else:
                comps.pop(k, None)
        return FieldElem(self.ctx, comps, xp_mul(d1, d2)).light()

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.ctx, {k: xp_neg(v) for k, v in self.comps.items()},
                         dict(self.den))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        return self + (-other)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        ctx = self.ctx
        comps: dict[int, XPoly] = {}
        for m1, c1 in self.comps.items():
            for m2, c2 in other.comps.items():
                prod = xp_mul(c1, c2)
                common = m1 & m2
                mask = m1 ^ m2
                mm = common
                while mm:
                    v = (mm & -mm).bit_length() - 1
                    prod = xp_mul(prod, ctx.ax[v])
                    mm &= mm - 1
                if mask in comps:
                    s = xp_add(comps[mask], prod)
                    if s:
                        comps[mask] = s
                    else:
                        del comps[mask]
                else:
                    comps[mask] = prod
        return FieldElem(ctx, comps, xp_mul(self.den, other.den)).light()

    def scale(self, q) -> "FieldElem":
        q = Fraction(q)
        if not q:
            return FieldElem(self.ctx, {}, xp_const(1))
        comps = {k: xp_scale(v, q.numerator) for k, v in self.comps.items()}
        den = xp_scale(self.den, q.denominator)
        return FieldElem(self.ctx, comps, den).light()

    def mul_xp(self, p: XPoly) -> "FieldElem":
        if not p:
            return FieldElem(self.ctx, {}, xp_const(1))
        return FieldElem(
            self.ctx,
            {k: xp_mul(v, p) for k, v in self.comps.items()},
            dict(self.den),
        ).light()

    def div_xp(self, p: XPoly) -> "FieldElem":
        if not p:
            raise ZeroDivisionError
        return FieldElem(
            self.ctx,
            {k: dict(v) for k, v in self.comps.items()},
            xp_mul(self.den, p),
        ).light()

    # ---------------- normalization

    def light(self) -> "FieldElem":
        """Cheap normalization: shared integer content and sign only."""
        if not self.comps:
            self.den = xp_const(1)
            return self
        g = xp_content(self.den)
        for v in self.comps.values():
            if g == 1:
                break
            g = gcd(g, xp_content(v))
        dk = max(self.den)
        if self.den[dk] < 0:
            g = -g
        if g not in (0, 1):
            self.den = xp_divscale(self.den, g)
            self.comps = {k: xp_divscale(v, g) for k, v in self.comps.items()}
        return self

    def strip_known(self) -> "FieldElem":
        """Divide out the frequent denominator factors by trial division."""
        self.light()
        if not self.comps:
            return self
        for f in self.ctx.known_factors:
            while True:
                d2 = xp_divexact(self.den, f)
                if d2 is None:
                    break
                divided = {}
                for k, v in self.comps.items():
                    q = xp_divexact(v, f)
                    if q is None:
                        break
                    divided[k] = q
                else:
                    self.den = d2
                    self.comps = divided
                    continue
                break
        return self

    def reduce(self) -> "FieldElem":
        """Full fraction reduction by polynomial gcd; stage-boundary cost."""
        self.strip_known()
        if not self.comps or self.den == {0: 1}:
            return self
        # once the known factors are stripped, a denominator that is a pure
        # product of known factors leaves no room for a polynomial gcd
        d = dict(self.den)
        for f in self.ctx.known_factors:
            while True:
                q = xp_divexact(d, f)
                if q is None:
                    break
                d = q
        if len(d) == 1 and 0 in d:
            return self
        g = dict(self.den)
        for v in sorted(self.comps.values(), key=len):
            g = xp_gcd(g, v)
            if g == {0: 1}:
                return self
        if g != {0: 1}:
            self.den = _strict_div(self.den, g)
            self.comps = {k: _strict_div(v, g) for k, v in self.comps.items()}
        return self.light()

    # ---------------- equality / inversion / derivation

    def equals(self, other: "FieldElem") -> bool:
        return (self - other).is_zero()

    def inverse(self) -> "FieldElem":
        """Tower inversion: rationalize one y at a time, reducing between
        steps; raises DegenerateInstance on division by zero."""
        if self.is_zero():
            raise DegenerateInstance("inverse of zero field element")
        ctx = self.ctx
        num = FieldElem(ctx, {0: dict(self.den)}, xp_const(1))
        cur = FieldElem(ctx, {k: dict(v) for k, v in self.comps.items()},
                        xp_const(1))
        while any(m for m in cur.comps):
            v = max(m.bit_length() for m in cur.comps if m) - 1
            bit = 1 << v
            conj = FieldElem(
                ctx,
                {m: (dict(c) if not (m & bit) else xp_neg(c))
                 for m, c in cur.comps.items()},
                dict(cur.den),
            )
            num = (num * conj)
            num.strip_known()
            cur = (cur * conj)
            cur.strip_known()
            assert all(not (m & bit) for m in cur.comps)
        base = cur.comps.get(0, {})
        if not base:
            raise DegenerateInstance("inverse of zero field element")
        out = FieldElem(
            ctx,
            {k: xp_mul(v, cur.den) for k, v in num.comps.items()},
            xp_mul(num.den, base),
        )
        return out.reduce()

    def divide(self, other: "FieldElem") -> "FieldElem":
        return self * other.inverse()

    def derive(self, m: int) -> "FieldElem":
        """y_m * d/dx_m, the holomorphic-direction derivation at point m.

        On the yhat basis with H = yhat^2:
          y_m d/dx_m (c/d yhat_S) =
            [2(c'd - cd') yhat_{S+m}                      (m not in S)
             2(c'd - cd') H yhat_{S-m} + c H' d yhat_{S-m} (m in S)]
            / (2 D d^2)
        """
        ctx = self.ctx
        v = m - 1
        d = self.den
        dd = xp_deriv(d, v)
        H = ctx.ax[v]
        Hd = ctx.axd[v]
        bit = 1 << v
        out: dict[int, XPoly] = {}

        def acc(mask, poly):
            if not poly:
                return
            if mask in out:
                s = xp_add(out[mask], poly)
                if s:
                    out[mask] = s
                else:
                    del out[mask]
            else:
                out[mask] = poly

        for mask, c in self.comps.items():
            qr = xp_sub(xp_mul(xp_deriv(c, v), d), xp_mul(c, dd))
            if mask & bit:
                if qr:
                    acc(mask & ~bit, xp_scale(xp_mul(qr, H), 2))
                acc(mask & ~bit, xp_mul(xp_mul(c, Hd), d))
            else:
                if qr:
                    acc(mask | bit, xp_scale(qr, 2))
        den = xp_scale(xp_mul(d, d), 2 * ctx.aden)
        return FieldElem(ctx, out, den).light()


def fe_sum(ctx, elems) -> FieldElem:
    acc = FieldElem(ctx, {}, xp_const(1))
    for e in elems:
        acc = acc + e
    return acc


# ------------------------------------------------- exact linear solves

def solve_xp_linear(ctx, mat: list, rhs: list) -> list:
    """Solve M u = b with XPoly matrix entries and FieldElem right sides.

    Cramer through the adjugate: u_i = sum_j adj_ij b_j / det, with the
    determinant and cofactors computed fraction-free over Z[x].
    """
    n = len(mat)
    det = _xp_det([row[:] for row in mat])
    if not det:
        raise DegenerateInstance("singular stage system")
    out = []
    for i in range(n):
        acc = FieldElem(ctx, {}, xp_const(1))
        for j in range(n):
            cof = _xp_cofactor(mat, j, i)
            if not cof:
                continue
            acc = acc + rhs[j].mul_xp(cof)
        out.append(acc.div_xp(det).reduce())
    return out


def _xp_det(m: list) -> XPoly:
    n = len(m)
    if n == 0:
        return xp_const(1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return xp_sub(xp_mul(m[0][0], m[1][1]), xp_mul(m[0][1], m[1][0]))
    sign = 1
    prev = xp_const(1)
    a = [row[:] for row in m]
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return {}
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = xp_sub(xp_mul(a[i][j], a[k][k]), xp_mul(a[i][k], a[k][j]))
                a[i][j] = _strict_div(num, prev) if num else {}
            a[i][k] = {}
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else xp_neg(d)


def _xp_cofactor(m: list, i: int, j: int) -> XPoly:
    n = len(m)
    sub = [
        [m[r][c] for c in range(n) if c != j]
        for r in range(n)
        if r != i
    ]
    d = _xp_det(sub)
    if (i + j) % 2:
        d = xp_neg(d)
    return d
