"""Exact rational linear algebra by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        data = tuple(tuple(Fraction(v) for v in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), ncols, data)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self.entries]

    def rank(self) -> int:
        return len(echelon(self.entries)[1])

    def nullspace(self) -> List[List[Fraction]]:
        return nullspace(self.entries, self.cols)


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    # scaling a row by a nonzero constant changes neither kernel nor rank
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def echelon(rows: Sequence[Sequence]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form.

    Pivot choice is the first nonzero entry in column order (searching rows
    top-down), so the result is deterministic.  Returns the integer echelon
    rows and the pivot column indices.
    """
    m = _integer_rows(rows)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                num = piv * row_i[j] - mic * row_r[j]
                row_i[j] = num // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(echelon(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of the right kernel, one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f`` and 0 in every
    other free position.
    """
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ech, pivots = echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = ech[k]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append(x)
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant via Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    rows = [[Fraction(v) for v in r] for r in rows]
    dens = [lcm(*(v.denominator for v in r)) for r in rows]
    m = [[int(v * d) for v in r] for r, d in zip(rows, dens)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (piv * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = piv
    scale = 1
    for d in dens:
        scale *= d
    return Fraction(sign * m[n - 1][n - 1], scale)


def solve(rows: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Exact solution of a consistent (possibly overdetermined) system.

    Raises ``ValueError`` if the system is inconsistent or underdetermined.
    """
    ncols = len(rows[0])
    aug = [list(r) + [-Fraction(b)] for r, b in zip(rows, rhs)]
    ker = nullspace(aug, ncols + 1)
    hits = [v for v in ker if v[ncols] != 0]
    if len(ker) != 1 or not hits:
        raise ValueError("system is inconsistent or has no unique solution")
    v = hits[0]
    return [c / v[ncols] for c in v[:ncols]]
