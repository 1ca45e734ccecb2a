"""Exact row reduction over Q for relation spaces."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of ``rows``; zero rows are dropped.

    Returns the nonzero reduced rows and their pivot columns.
    """
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
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


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


class Quotient:
    """Q^n modulo the span of given relation rows.

    The free (non-pivot) columns index a basis of the quotient.
    """

    def __init__(self, relation_rows: Sequence[Sequence], ncols: int):
        self.ncols = ncols
        self.rows, self.pivots = rref(relation_rows, ncols)
        pivset = set(self.pivots)
        self.free = [c for c in range(ncols) if c not in pivset]

    @property
    def dimension(self) -> int:
        return len(self.free)

    def normal_form(self, v: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        nf = self.normal_form(v)
        return tuple(nf[c] for c in self.free)

    def in_span(self, v: Sequence) -> bool:
        return not any(self.normal_form(v))
