"""Exact Gaussian elimination over the rationals.

Rows are lists of Fractions.  Reduction scans columns left to right, so the
column order chosen by the caller decides which columns become pivots; the
marked-basis extraction relies on this to keep pivots inside the ideal
columns whenever possible.
"""
from __future__ import annotations

from fractions import Fraction


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form: returns (nonzero rows, pivot column indices)."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        if inv != 1:
            m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[Fraction]]) -> int:
    return len(rref(rows)[0])


def eliminate(vector: list[Fraction], reduced_rows: list[list[Fraction]],
              pivots: list[int]) -> list[Fraction]:
    """Subtract multiples of the RREF rows so the pivot columns vanish."""
    v = list(map(Fraction, vector))
    for row, c in zip(reduced_rows, pivots):
        f = v[c]
        if f != 0:
            v = [a - f * b for a, b in zip(v, row)]
    return v


class LinearSpan:
    """An incrementally built row space with exact membership tests."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def add(self, vector: list[Fraction]) -> bool:
        """Insert a vector; True if it enlarged the span."""
        v = eliminate(vector, self.rows, self.pivots)
        c = next((i for i, x in enumerate(v) if x != 0), None)
        if c is None:
            return False
        inv = Fraction(1) / v[c]
        if inv != 1:
            v = [x * inv for x in v]
        for row in self.rows:
            f = row[c]
            if f != 0:
                row[:] = [a - f * b for a, b in zip(row, v)]
        at = next((k for k, p in enumerate(self.pivots) if p > c), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, c)
        return True

    def contains(self, vector: list[Fraction]) -> bool:
        return all(x == 0 for x in eliminate(vector, self.rows, self.pivots))

    @property
    def rank(self) -> int:
        return len(self.rows)
