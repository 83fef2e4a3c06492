"""Interned symbol table shared by every polynomial in the package.

Symbols are interned once, at import time, into a single global order that
every monomial comparison and every serialization uses:

    a0 < a1 < ... < a8
      < wp[...] symbols ordered by their index tuple
      < x < y < x1 < y1 < x2 < y2 < x3 < y3
      < l0 < ... < l4 < k0 < ... < k4 < r

wp index tuples are always stored sorted ascending; the symmetry
wp[i,j] = wp[j,i] is therefore a property of the canonical form, not data.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

MAX_GENUS = 3


@dataclass(frozen=True)
class Symbol:
    sid: int
    kind: str      # "a" | "wp" | "x" | "y" | "xm" | "ym" | "l" | "k" | "r"
    data: tuple    # kind-specific payload, e.g. (i,) for a_i, index tuple for wp
    name: str

    def __repr__(self):
        return self.name


SYMBOLS: list[Symbol] = []
NAME_TO_SYM: dict[str, Symbol] = {}


def _intern(kind: str, data: tuple, name: str) -> Symbol:
    s = Symbol(len(SYMBOLS), kind, data, name)
    SYMBOLS.append(s)
    NAME_TO_SYM[name] = s
    return s


def _wp_name(idx: tuple) -> str:
    return "wp[%s]" % ",".join(str(i) for i in idx)


for _i in range(2 * MAX_GENUS + 3):
    _intern("a", (_i,), "a%d" % _i)

_wp_tuples = sorted(
    tup
    for n in (2, 3, 4)
    for tup in combinations_with_replacement(range(1, MAX_GENUS + 1), n)
)
for _t in _wp_tuples:
    _intern("wp", _t, _wp_name(_t))

_intern("x", (), "x")
_intern("y", (), "y")
for _m in range(1, MAX_GENUS + 1):
    _intern("xm", (_m,), "x%d" % _m)
    _intern("ym", (_m,), "y%d" % _m)
for _i in range(MAX_GENUS + 2):
    _intern("l", (_i,), "l%d" % _i)
for _i in range(MAX_GENUS + 2):
    _intern("k", (_i,), "k%d" % _i)
_intern("r", (), "r")

NSYM = len(SYMBOLS)


def a(i: int) -> Symbol:
    return NAME_TO_SYM["a%d" % i]


def wp(*idx: int) -> Symbol:
    if not 2 <= len(idx) <= 4:
        raise KeyError("wp symbols carry 2 to 4 indices, got %r" % (idx,))
    return NAME_TO_SYM[_wp_name(tuple(sorted(idx)))]


def xvar() -> Symbol:
    return NAME_TO_SYM["x"]


def yvar() -> Symbol:
    return NAME_TO_SYM["y"]


def xm(m: int) -> Symbol:
    return NAME_TO_SYM["x%d" % m]


def ym(m: int) -> Symbol:
    return NAME_TO_SYM["y%d" % m]


def border_l(i: int) -> Symbol:
    return NAME_TO_SYM["l%d" % i]


def border_k(i: int) -> Symbol:
    return NAME_TO_SYM["k%d" % i]


def root() -> Symbol:
    return NAME_TO_SYM["r"]


def by_name(name: str) -> Symbol:
    return NAME_TO_SYM[name]


def validate_for_genus(sym: Symbol, g: int) -> bool:
    """True when the symbol is meaningful for a genus-g computation."""
    if sym.kind == "a":
        return sym.data[0] <= 2 * g + 2
    if sym.kind == "wp":
        return all(1 <= i <= g for i in sym.data)
    if sym.kind in ("xm", "ym"):
        return sym.data[0] <= g
    if sym.kind in ("l", "k"):
        return sym.data[0] <= g + 1
    return True
