"""Polynomial observables on H_Q with the Moyal-Weyl star product.

The Poisson bivector pairs coordinate functions through the intersection
form, {x_u, x_v} = omega(u, v), so that x * y - y * x = t {x, y} for
linear x, y.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from ..errors import InvalidArgument
from .lattice import SymplecticLattice

# monomial: (t exponent, exponents of x_1..x_2g)
Monomial = tuple


@dataclass(frozen=True)
class PolynomialObservable:
    genus: int
    order: int  # t-truncation K: terms t^k with k >= K are dropped
    terms: tuple[tuple[Monomial, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, genus: int, order: int, mapping: Mapping[Monomial, Fraction]) -> PolynomialObservable:
        n = 2 * genus
        items = []
        for (te, exps), c in mapping.items():
            if len(exps) != n:
                raise InvalidArgument(f"monomial needs {n} exponents")
            if c != 0 and te < order:
                items.append(((te, tuple(exps)), Fraction(c)))
        return cls(genus, order, tuple(sorted(items)))

    @classmethod
    def constant(cls, genus: int, order: int, c=1) -> PolynomialObservable:
        return cls.from_dict(genus, order, {(0, (0,) * (2 * genus)): c})

    @classmethod
    def variable(cls, genus: int, order: int, name_or_index) -> PolynomialObservable:
        lat = SymplecticLattice(genus)
        i = lat.basis_index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        exps = [0] * (2 * genus)
        exps[i] = 1
        return cls.from_dict(genus, order, {(0, tuple(exps)): 1})

    @classmethod
    def t(cls, genus: int, order: int) -> PolynomialObservable:
        return cls.from_dict(genus, order, {(1, (0,) * (2 * genus)): 1})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def _check(self, other: PolynomialObservable) -> int:
        if self.genus != other.genus:
            raise InvalidArgument(f"genus mismatch: {self.genus} vs {other.genus}")
        return min(self.order, other.order)

    def __add__(self, other: PolynomialObservable) -> PolynomialObservable:
        order = self._check(other)
        acc = self.as_dict()
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return PolynomialObservable.from_dict(self.genus, order, acc)

    def scale(self, k) -> PolynomialObservable:
        return PolynomialObservable.from_dict(self.genus, self.order, {m: c * k for m, c in self.terms})

    def __neg__(self) -> PolynomialObservable:
        return self.scale(-1)

    def __sub__(self, other: PolynomialObservable) -> PolynomialObservable:
        return self + (-other)

    def __rmul__(self, k) -> PolynomialObservable:
        return self.scale(k)

    def __mul__(self, other):
        """Commutative product; use :func:`moyal_product` for the star product."""
        if not isinstance(other, PolynomialObservable):
            return self.scale(other)
        order = self._check(other)
        acc: dict = {}
        for (ta, ea), ca in self.terms:
            for (tb, eb), cb in other.terms:
                if ta + tb >= order:
                    continue
                m = (ta + tb, tuple(x + y for x, y in zip(ea, eb)))
                acc[m] = acc.get(m, 0) + ca * cb
        return PolynomialObservable.from_dict(self.genus, order, acc)

    def truncate(self, order: int) -> PolynomialObservable:
        return PolynomialObservable.from_dict(self.genus, min(order, self.order), self.as_dict())

    def divide_by_t(self) -> PolynomialObservable:
        """Shift t-degrees down by one; the t^0 part must vanish."""
        if any(te == 0 for (te, _), _ in self.terms):
            raise InvalidArgument("observable has a t^0 part")
        return PolynomialObservable.from_dict(
            self.genus, self.order - 1, {(te - 1, e): c for (te, e), c in self.terms})

    def derivative(self, i: int) -> PolynomialObservable:
        acc: dict = {}
        for (te, e), c in self.terms:
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                acc[(te, ne)] = acc.get((te, ne), 0) + c * e[i]
        return PolynomialObservable.from_dict(self.genus, self.order, acc)

    def is_zero(self) -> bool:
        return not self.terms


def _bivector(genus: int) -> list[tuple[int, int, int]]:
    form = SymplecticLattice(genus).form
    return [(i, j, w) for i, row in enumerate(form) for j, w in enumerate(row) if w]


def _d(exps: tuple, i: int):
    return exps[i], exps[:i] + (exps[i] - 1,) + exps[i + 1:]


def moyal_product(p: PolynomialObservable, q: PolynomialObservable, order: int | None = None) -> PolynomialObservable:
    """p * q = sum_n t^n / (2^n n!) (P^{ij} d_i (x) d_j)^n (p (x) q), modulo t^order."""
    K = p._check(q) if order is None else min(order, p._check(q))
    biv = _bivector(p.genus)
    # pending bidifferential images: {(monomial of p-side, monomial of q-side): coeff}
    pairs: dict = {}
    for mp, cp in p.terms:
        for mq, cq in q.terms:
            pairs[(mp, mq)] = pairs.get((mp, mq), 0) + cp * cq
    acc: dict = {}
    n = 0
    while pairs and n < K:
        weight = Fraction(1, 2 ** n * factorial(n))
        for ((ta, ea), (tb, eb)), c in pairs.items():
            te = ta + tb + n
            if te >= K:
                continue
            m = (te, tuple(x + y for x, y in zip(ea, eb)))
            acc[m] = acc.get(m, 0) + c * weight
        nxt: dict = {}
        for ((ta, ea), (tb, eb)), c in pairs.items():
            if ta + tb + n + 1 >= K:
                continue
            for i, j, w in biv:
                if ea[i] and eb[j]:
                    ki, nea = _d(ea, i)
                    kj, neb = _d(eb, j)
                    key = ((ta, nea), (tb, neb))
                    nxt[key] = nxt.get(key, 0) + c * w * ki * kj
        pairs = {k: v for k, v in nxt.items() if v != 0}
        n += 1
    return PolynomialObservable.from_dict(p.genus, K, acc)


def poisson_bracket(p: PolynomialObservable, q: PolynomialObservable) -> PolynomialObservable:
    """{p, q} = sum P^{ij} d_i p d_j q with {x_u, x_v} = omega(u, v)."""
    order = p._check(q)
    out = PolynomialObservable.from_dict(p.genus, order, {})
    for i, j, w in _bivector(p.genus):
        out = out + (p.derivative(i) * q.derivative(j)).scale(w)
    return out


def commutator(p: PolynomialObservable, q: PolynomialObservable, order: int | None = None) -> PolynomialObservable:
    return moyal_product(p, q, order) - moyal_product(q, p, order)
