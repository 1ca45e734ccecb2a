"""Dense integer polynomials in one variable.

A polynomial is a tuple of coefficients, constant term first, with no
trailing zeros.  The zero polynomial is the empty tuple.
"""
from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, Sequence

Poly = tuple


def trim(coeffs: Iterable[int]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Sequence[int]) -> int:
    p = trim(p)
    return len(p) - 1


def add(p: Sequence[int], q: Sequence[int]) -> Poly:
    return trim(a + b for a, b in zip_longest(p, q, fillvalue=0))


def sub(p: Sequence[int], q: Sequence[int]) -> Poly:
    return trim(a - b for a, b in zip_longest(p, q, fillvalue=0))


def neg(p: Sequence[int]) -> Poly:
    return trim(-a for a in p)


def scale(p: Sequence[int], k: int) -> Poly:
    return trim(k * a for a in p)


def mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def power(p: Sequence[int], k: int) -> Poly:
    out: Poly = (1,)
    for _ in range(k):
        out = mul(out, p)
    return out


def monomial(k: int, c: int = 1) -> Poly:
    return trim([0] * k + [c])


def divmod_monic(p: Sequence[int], m: Sequence[int]) -> tuple[Poly, Poly]:
    """Exact quotient and remainder of ``p`` by a polynomial with leading coefficient 1.

    Raises ValueError for any other divisor; integer division by a
    non-monic polynomial is not closed over Z.
    """
    m = trim(m)
    if not m or m[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(trim(p))
    dm = len(m) - 1
    if len(r) - 1 < dm:
        return (), tuple(r)
    quot = [0] * (len(r) - dm)
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            quot[i - dm] = c
            for j in range(dm + 1):
                r[i - dm + j] -= c * m[j]
    return trim(quot), trim(r[:dm])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_one_minus(p: Sequence[int]) -> Poly:
    """Coefficients of p(1 - h) as a polynomial in h."""
    out: Poly = ()
    base: Poly = (1,)
    for c in p:
        out = add(out, scale(base, c))
        base = mul(base, (1, -1))
    return out


def pochhammer(k: int) -> Poly:
    """(1 - q)(1 - q^2)...(1 - q^k); the empty product for k = 0."""
    out: Poly = (1,)
    for j in range(1, k + 1):
        out = mul(out, sub((1,), monomial(j)))
    return out


def to_str(p: Sequence[int], var: str = "q") -> str:
    p = trim(p)
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            mono = ""
        elif k == 1:
            mono = var
        else:
            mono = f"{var}^{k}"
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
