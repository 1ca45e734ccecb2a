"""Smith and Hermite normal forms over Z, with unimodular transforms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = tuple  # tuple of row tuples


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(det)


@dataclass(frozen=True)
class SmithForm:
    """``left @ A @ right`` is diagonal with entries ``diagonal`` (d1 | d2 | ...)."""

    diagonal: tuple[int, ...]
    left: Matrix
    right: Matrix
    shape: tuple[int, int]

    def diagonal_matrix(self) -> list[list[int]]:
        m, n = self.shape
        d = [[0] * n for _ in range(m)]
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms.  ``ncols`` is needed only when
    ``a`` has no rows."""
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    s = [list(map(int, row)) for row in a]
    left = identity(m)
    right = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in s:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(t, i, -(s[i][t] // p))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(t, j, -(s[t][j] // p))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            left[t] = [-x for x in left[t]]
    diag = tuple(s[i][i] for i in range(min(m, n)))
    return SmithForm(diag, tuple(map(tuple, left)), tuple(map(tuple, right)), (m, n))


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A Z-basis of {x : a x = 0}, as a list of vectors."""
    sf = smith_normal_form(a, ncols)
    r = sf.rank
    return [[sf.right[i][j] for i in range(ncols)] for j in range(r, ncols)]


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical basis (row Hermite normal form) of the lattice spanned by ``rows``."""
    h = [list(map(int, r)) for r in rows if any(r)]
    out = []
    col = 0
    while h and col < ncols:
        live = [r for r in h if r[col]]
        if not live:
            col += 1
            continue
        while len([r for r in h if r[col]]) > 1:
            live = sorted((r for r in h if r[col]), key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col]
                for k in range(ncols):
                    r[k] -= q * piv[k]
        piv = next(r for r in h if r[col])
        h.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        for prev in out:
            q = prev[col] // piv[col]
            if q:
                for k in range(ncols):
                    prev[k] -= q * piv[k]
        out.append(piv)
        h = [r for r in h if any(r)]
        col += 1
    return tuple(tuple(r) for r in out)
