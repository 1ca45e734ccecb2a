"""Exact arithmetic in Z[xi_n], xi_n a primitive n-th root of unity."""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import poly
from .errors import InvalidArgument


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class CyclotomicPolynomial:
    order: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return poly.evaluate(self.coefficients, x)


@lru_cache(maxsize=None)
def _phi(n: int) -> tuple[int, ...]:
    num = poly.sub(poly.monomial(n), (1,))
    den: tuple[int, ...] = (1,)
    for d in divisors(n)[:-1]:
        den = poly.mul(den, _phi(d))
    quot, rem = poly.divmod_monic(num, den)
    assert not rem
    return quot


def cyclotomic_polynomial(n: int) -> CyclotomicPolynomial:
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"cyclotomic order must be a positive integer, got {n!r}")
    return CyclotomicPolynomial(n, _phi(n))


@dataclass(frozen=True)
class CyclotomicInteger:
    """Element of Z[xi_n] in the power basis 1, xi, ..., xi^(phi(n)-1)."""

    order: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != totient(self.order):
            raise InvalidArgument(
                f"Z[xi_{self.order}] needs {totient(self.order)} coefficients, "
                f"got {len(self.coefficients)}"
            )

    @classmethod
    def from_int(cls, k: int, n: int) -> CyclotomicInteger:
        return cyclo_reduce((k,), n)

    @classmethod
    def xi(cls, n: int) -> CyclotomicInteger:
        return cyclo_reduce((0, 1), n)

    def _check(self, other: CyclotomicInteger) -> None:
        if self.order != other.order:
            raise InvalidArgument(f"cannot combine Z[xi_{self.order}] with Z[xi_{other.order}]")

    def __add__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        self._check(other)
        return cyclo_reduce(poly.add(self.coefficients, other.coefficients), self.order)

    def __sub__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        self._check(other)
        return cyclo_reduce(poly.sub(self.coefficients, other.coefficients), self.order)

    def __neg__(self) -> CyclotomicInteger:
        return CyclotomicInteger(self.order, tuple(-c for c in self.coefficients))

    def __mul__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        self._check(other)
        return cyclo_reduce(poly.mul(self.coefficients, other.coefficients), self.order)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_complex(self, k: int = 1) -> complex:
        """Numeric value at xi = exp(2 pi i k / n); k must be coprime to n."""
        z = cmath.exp(2j * cmath.pi * k / self.order)
        return complex(poly.evaluate(self.coefficients, z))

    def __str__(self) -> str:
        return poly.to_str(self.coefficients, var="xi")


def cyclo_reduce(p: Sequence[int], n: int) -> CyclotomicInteger:
    """Remainder of the integer polynomial ``p`` modulo the n-th cyclotomic polynomial."""
    phi = cyclotomic_polynomial(n)
    _, rem = poly.divmod_monic(p, phi.coefficients)
    padded = tuple(rem) + (0,) * (phi.degree - len(rem))
    return CyclotomicInteger(n, padded)
