"""Curve family, covariant Klein matrices, and covariant polar forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import symbols as S
from .matrix import PolyMatrix
from .poly import Poly, NotDivisible, exact_div
from .sl2 import UnsupportedGenus, apply, make_generators


class InvariantViolation(AssertionError):
    pass


def _check_genus(g):
    if g not in (1, 2, 3):
        raise UnsupportedGenus(g)


def a_poly(g: int, in_sym: S.Symbol) -> Poly:
    """a(x) = sum_i C(2g+2, i) a_i x^i in the given x-like symbol."""
    n = 2 * g + 2
    acc = Poly()
    for i in range(n + 1):
        acc = acc + Poly.sym(S.a(i), 1, comb(n, i)) * Poly.sym(in_sym, i)
    return acc


@dataclass(frozen=True)
class CurveFamily:
    genus: int
    v: Poly  # defining polynomial y^2 - a(x)


def curve_poly(g: int) -> CurveFamily:
    _check_genus(g)
    v = Poly.sym(S.yvar(), 2) - a_poly(g, S.xvar())
    fam = CurveFamily(g, v)
    e, f, _ = make_generators(g)
    if not apply(e, v).is_zero():
        raise InvariantViolation("curve family is not raising-invariant")
    if not (apply(f, v) + Poly.sym(S.xvar(), 1, 2 * (g + 1)) * v).is_zero():
        raise InvariantViolation("curve family fails the lowering covariance")
    return fam


# ------------------------------------------------------------ Klein matrices

def _p(expr: str) -> Poly:
    from .poly import parse_text

    return parse_text(expr)


_KLEIN_ENTRIES = {
    1: [
        ["a0", "2*a1", "a2 - 2*wp[1,1]"],
        ["2*a1", "4*a2 + 4*wp[1,1]", "2*a3"],
        ["a2 - 2*wp[1,1]", "2*a3", "a4"],
    ],
    2: [
        ["a0", "3*a1", "3*a2 - 2*wp[1,1]", "a3 - 2*wp[1,2]"],
        ["3*a1", "9*a2 + 4*wp[1,1]", "9*a3 + 2*wp[1,2]", "3*a4 - 2*wp[2,2]"],
        ["3*a2 - 2*wp[1,1]", "9*a3 + 2*wp[1,2]", "9*a4 + 4*wp[2,2]", "3*a5"],
        ["a3 - 2*wp[1,2]", "3*a4 - 2*wp[2,2]", "3*a5", "a6"],
    ],
    3: [
        ["a0", "4*a1", "6*a2 - 2*wp[1,1]", "4*a3 - 2*wp[1,2]", "a4 - 2*wp[1,3]"],
        ["4*a1", "16*a2 + 4*wp[1,1]", "24*a3 + 2*wp[1,2]",
         "16*a4 - 2*wp[2,2] + 4*wp[1,3]", "4*a5 - 2*wp[2,3]"],
        ["6*a2 - 2*wp[1,1]", "24*a3 + 2*wp[1,2]", "36*a4 + 4*wp[2,2] - 4*wp[1,3]",
         "24*a5 + 2*wp[2,3]", "6*a6 - 2*wp[3,3]"],
        ["4*a3 - 2*wp[1,2]", "16*a4 - 2*wp[2,2] + 4*wp[1,3]", "24*a5 + 2*wp[2,3]",
         "16*a6 + 4*wp[3,3]", "4*a7"],
        ["a4 - 2*wp[1,3]", "4*a5 - 2*wp[2,3]", "6*a6 - 2*wp[3,3]", "4*a7", "a8"],
    ],
}


@dataclass(frozen=True)
class KleinMatrix:
    genus: int
    mat: PolyMatrix

    def at(self, i: int, j: int) -> Poly:
        """1-based access matching the customary h_{ij} labelling."""
        return self.mat.at(i - 1, j - 1)


def klein_matrix(g: int) -> KleinMatrix:
    _check_genus(g)
    mat = PolyMatrix.from_rows([[_p(s) for s in row] for row in _KLEIN_ENTRIES[g]])
    h = KleinMatrix(g, mat)
    if not mat.is_symmetric():
        raise InvariantViolation("klein matrix must be symmetric")
    bad = [d for d, (_, residual) in enumerate(antidiagonal_check(h)) if residual]
    if bad:
        raise InvariantViolation("antidiagonal sums fail at degrees %s" % bad)
    return h


def antidiagonal_check(h: KleinMatrix) -> list[tuple[Poly, bool]]:
    """Per degree d: sum of h_{ij} over i+j=d+2 minus the x^d coefficient of a(x).

    Returns [(residual, is_bad)] indexed by d; all wp terms must cancel.
    """
    g = h.genus
    n = g + 2
    out = []
    for d in range(2 * g + 3):
        acc = Poly()
        for i in range(1, n + 1):
            j = d + 2 - i
            if 1 <= j <= n:
                acc = acc + h.at(i, j)
        acc = acc - Poly.sym(S.a(d), 1, comb(2 * g + 2, d))
        out.append((acc, not acc.is_zero()))
    return out


# ------------------------------------------------------- the X representation

@dataclass(frozen=True)
class XRep:
    """Components of the (2g+3)-dimensional representation built on the
    highest weight 1/(x - x_1)^(g+1); each component is stored as the
    numerator over that fixed denominator power."""

    genus: int
    numerators: list  # list[Poly], divided-power normalization
    den_power: int


def build_x_rep(g: int) -> XRep:
    """Divided-power lowering chain from (g+1)!/(x - x_1)^(g+1).

    For a numerator N over (x-x_1)^(g+1) the lowering operator acts as
    N -> f(N) + (g+1)(x + x_1) N, since f(x - x_1) = -(x - x_1)(x + x_1).
    Components are (-1)^k f^k(hw)/k!; with the chain started at (g+1)! this
    reproduces the customary printed genus-2 normalization after dividing
    the 2g+1 interior components by 2g+2.
    """
    _check_genus(g)
    e, f, _ = make_generators(g)
    x = Poly.sym(S.xvar())
    x1 = Poly.sym(S.xm(1))
    raw = Poly.const(factorial(g + 1))
    nums = []
    sign = 1
    kfac = 1
    for k in range(2 * g + 3):
        nums.append(raw.scale(Fraction(sign, kfac)))
        raw = apply(f, raw) + (x + x1) * raw.scale(g + 1)
        sign = -sign
        kfac *= k + 1
    if not (apply(f, nums[-1]) + (x + x1) * nums[-1].scale(g + 1)).is_zero():
        raise InvariantViolation("lowering chain does not terminate")
    return XRep(g, nums, g + 1)


def x_rep_printed(rep: XRep) -> list[Poly]:
    """Customary display normalization: interior components divided by 2g+2."""
    n = len(rep.numerators)
    scale = Fraction(1, 2 * rep.genus + 2)
    return [
        p if k in (0, n - 1) else p.scale(scale)
        for k, p in enumerate(rep.numerators)
    ]


# ------------------------------------------------------------- polar forms

@dataclass(frozen=True)
class PolarForm:
    genus: int
    ftilde: Poly          # polynomial in x, x_1, a_i
    rep: XRep
    coefficients: tuple   # contraction coefficient of a_i against component i


def polar_form(g: int) -> PolarForm:
    """The covariant polar form, solved from invariance rather than transcribed.

    F = sum_i c_i a_i N_i must satisfy e(F) = 0; the solution space is one
    dimensional and the scale is fixed by F(x_1, x_1) = a(x_1).  The raising
    condition on F/(x-x_1)^(g+1) reduces to e(F) = 0 because e(x - x_1) = 0,
    and the lowering condition to f(F) + (g+1)(x + x_1) F = 0.
    """
    _check_genus(g)
    e, f, _ = make_generators(g)
    rep = build_x_rep(g)
    n = 2 * g + 3

    # e(F) = 0 as a linear system for the contraction coefficients c_i:
    # columns e(a_i * N_i), eliminated over the monomial basis.
    cols = [apply(e, Poly.sym(S.a(i)) * rep.numerators[i]) for i in range(n)]
    monos = sorted({m for c in cols for m in c.terms}, key=lambda m: m)
    rows = [[col.terms.get(m, Fraction(0)) for col in cols] for m in monos]
    kernel = _nullspace(rows, n)
    if len(kernel) != 1:
        raise InvariantViolation(
            "raising annihilation has kernel of dimension %d" % len(kernel)
        )
    coeffs = kernel[0]

    ftilde = Poly()
    for i in range(n):
        ftilde = ftilde + (Poly.sym(S.a(i)) * rep.numerators[i]).scale(coeffs[i])

    # scale so that F(x_1, x_1) = a(x_1)
    diag = ftilde.substitute({S.xvar(): Poly.sym(S.xm(1))})
    target = a_poly(g, S.xm(1))
    from .sl2 import proportionality

    c = proportionality(diag, target)
    if c is None or c == 0:
        raise InvariantViolation("invariant contraction cannot match the curve")
    ftilde = ftilde.scale(c)
    coeffs = tuple(q * c for q in coeffs)

    pf = PolarForm(g, ftilde, rep, coeffs)
    _validate_polar(pf, e, f)
    return pf


def _validate_polar(pf: PolarForm, e, f):
    g = pf.genus
    F = pf.ftilde
    x, x1 = S.xvar(), S.xm(1)
    swapped = F.substitute({x: Poly.sym(x1), x1: Poly.sym(x)})
    if swapped != F:
        raise InvariantViolation("polar form is not point symmetric")
    diag = F.substitute({x: Poly.sym(x1)})
    if diag != a_poly(g, x1):
        raise InvariantViolation("polar form fails the on-curve condition")
    if not apply(e, F).is_zero():
        raise InvariantViolation("polar form not raising-annihilated")
    low = apply(f, F) + (Poly.sym(x) + Poly.sym(x1)) * F.scale(g + 1)
    if not low.is_zero():
        raise InvariantViolation("polar form not lowering-annihilated")


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Kernel basis of a small exact matrix (row lists over Fraction)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [vi - fac * vr for vi, vr in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for c, pr in pivots.items():
            vec[c] = -m[pr][fc]
        basis.append(vec)
    return basis


def printed_polar_form_genus1() -> Poly:
    """The genus-1 polar form as customarily displayed (known to fail the
    on-curve condition; kept for the discrepancy report)."""
    return _p(
        "a0 + 2*a1*x + 2*a1*x1 + a2*x^2 + a2*x*x1 + a2*x1^2"
        " + a3*x^2*x1 + a3*x*x1^2 + a4*x^2*x1^2"
    )


def classical_polar_form_genus2() -> Poly:
    """Classical genus-2 polar form for the normal form a6 = 0, a5 = 2/3."""
    x = Poly.sym(S.xvar())
    x1 = Poly.sym(S.xm(1))
    return (
        (x + x1) * (x * x1) ** 2 * 2
        + Poly.sym(S.a(4), 1, 15) * x ** 2 * x1 ** 2
        + Poly.sym(S.a(3), 1, 10) * (x + x1) * x * x1
        + Poly.sym(S.a(2), 1, 15) * x * x1
        + Poly.sym(S.a(1), 1, 3) * (x + x1)
        + Poly.sym(S.a(0))
    )


def tangency_check(pf: PolarForm, coeffs=None, at=None) -> int:
    """Multiplicity of (x - x_1) in a(x) a(x_1) - F^2.

    With symbolic coefficients this is the generic contact order of the
    polar curve with the hyperelliptic curve; optional rational coefficients
    (and an optional rational point for x_1) specialize first.
    """
    g = pf.genus
    x, x1 = S.xvar(), S.xm(1)
    diff = a_poly(g, x) * a_poly(g, x1) - pf.ftilde * pf.ftilde
    if coeffs is not None:
        binds = {S.a(i): Poly.const(c) for i, c in enumerate(coeffs)}
        diff = diff.substitute(binds)
    divisor = Poly.sym(x) - Poly.sym(x1)
    if at is not None:
        diff = diff.substitute({x1: Poly.const(at)})
        divisor = Poly.sym(x) - Poly.const(at)
    if diff.is_zero():
        raise InvariantViolation("tangency difference vanished identically")
    mult = 0
    while True:
        try:
            diff = exact_div(diff, divisor)
            mult += 1
        except NotDivisible:
            return mult
