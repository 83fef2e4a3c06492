"""Dense matrices of polynomials with exact, fraction-free determinants."""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly, exact_div


class NonSquare(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class PolyMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: list[Poly]):
        if rows <= 0 or cols <= 0 or len(entries) != rows * cols:
            raise ValueError("need rows*cols entries")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)

    @staticmethod
    def from_rows(rows: list[list[Poly]]) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0])
        flat = []
        for row in rows:
            assert len(row) == c
            flat.extend(row)
        return PolyMatrix(r, c, flat)

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix.from_rows(
            [[Poly.const(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    def at(self, i: int, j: int) -> Poly:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexOutOfRange((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Poly]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_rows(
            [[self.at(i, j) for i in range(self.rows)] for j in range(self.cols)]
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.at(i, j) == self.at(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def submatrix(self, keep_rows, keep_cols) -> "PolyMatrix":
        return PolyMatrix.from_rows(
            [[self.at(i, j) for j in keep_cols] for i in keep_rows]
        )

    def mul_vector(self, vec: list[Poly]) -> list[Poly]:
        assert len(vec) == self.cols
        out = []
        for i in range(self.rows):
            acc = Poly()
            for j in range(self.cols):
                acc = acc + self.at(i, j) * vec[j]
            out.append(acc)
        return out

    def matmul(self, other: "PolyMatrix") -> "PolyMatrix":
        assert self.cols == other.rows
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly()
                for t in range(self.cols):
                    acc = acc + self.at(i, t) * other.at(t, j)
                row.append(acc)
            out.append(row)
        return PolyMatrix.from_rows(out)


def det_cofactor(m: PolyMatrix) -> Poly:
    """Cofactor-expansion determinant; exponential, for small or check use."""
    if m.rows != m.cols:
        raise NonSquare((m.rows, m.cols))
    n = m.rows
    if n == 1:
        return m.at(0, 0)
    if n == 2:
        return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)
    acc = Poly()
    cols = list(range(n))
    for j in range(n):
        minor = m.submatrix(range(1, n), [c for c in cols if c != j])
        term = m.at(0, j) * det_cofactor(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def det_bareiss(m: PolyMatrix) -> Poly:
    """Fraction-free Bareiss determinant; every division is exact."""
    if m.rows != m.cols:
        raise NonSquare((m.rows, m.cols))
    n = m.rows
    a = [[m.at(i, j) for j in range(n)] for i in range(n)]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly()
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev)
            a[i][k] = Poly()
        prev = pivot
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def determinant(m: PolyMatrix) -> Poly:
    """Exact determinant: cofactor expansion below 4x4, Bareiss from 4x4 up."""
    if m.rows != m.cols:
        raise NonSquare((m.rows, m.cols))
    if m.rows < 4:
        return det_cofactor(m)
    return det_bareiss(m)


def minor(m: PolyMatrix, delete_rows, delete_cols) -> Poly:
    """Unsigned minor: determinant after deleting the given rows/columns."""
    delete_rows = set(delete_rows)
    delete_cols = set(delete_cols)
    if len(delete_rows) != len(delete_cols):
        raise ValueError("must delete equally many rows and columns")
    for i in delete_rows:
        if not 0 <= i < m.rows:
            raise IndexOutOfRange(i)
    for j in delete_cols:
        if not 0 <= j < m.cols:
            raise IndexOutOfRange(j)
    keep_r = [i for i in range(m.rows) if i not in delete_rows]
    keep_c = [j for j in range(m.cols) if j not in delete_cols]
    return determinant(m.submatrix(keep_r, keep_c))


def bordered_det_two(h: PolyMatrix, lvec: list[Poly], kvec: list[Poly]) -> Poly:
    """det of [[h, l, k], [l^T, 0, 0], [k^T, 0, 0]] via double Laplace expansion.

    Expanding along the two border rows and then the two border columns gives
      sum over i<j, p<q of (-1)^(i+j+p+q) (l_i k_j - l_j k_i)(l_p k_q - l_q k_p)
                          * det(h with rows i,j and cols p,q deleted)
    (0-based i,j,p,q shift the sign pattern by an even amount).
    """
    n = h.rows
    assert h.cols == n and len(lvec) == n and len(kvec) == n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    plueck = {
        (i, j): lvec[i] * kvec[j] - lvec[j] * kvec[i] for (i, j) in pairs
    }
    acc = Poly()
    for (i, j) in pairs:
        wij = plueck[(i, j)]
        if wij.is_zero():
            continue
        for (p, q) in pairs:
            wpq = plueck[(p, q)]
            if wpq.is_zero():
                continue
            sub = minor(h, {i, j}, {p, q})
            if sub.is_zero():
                continue
            term = wij * wpq * sub
            acc = acc + (term if (i + j + p + q) % 2 == 0 else -term)
    return acc


def assemble_bordered(h: PolyMatrix, borders: list[list[Poly]]) -> PolyMatrix:
    """Assemble [[h, b1, ..], [b1^T, 0, ..], ...] with a zero corner block."""
    n = h.rows
    b = len(borders)
    zero = Poly()
    rows = []
    for i in range(n):
        rows.append(h.row(i) + [bv[i] for bv in borders])
    for bv in borders:
        rows.append(list(bv) + [zero] * b)
    return PolyMatrix.from_rows(rows)
