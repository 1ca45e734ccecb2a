"""Truncations of the cyclotomic completion of Z[q].

Level N means working in Z[q] / ((1-q)(1-q^2)...(1-q^(N+1))).  At that
level evaluation at primitive roots of order <= N+1 and the Taylor
expansion at q = 1 modulo (1-q)^(N+1) are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import poly
from .cyclotomic import CyclotomicInteger, cyclo_reduce
from .errors import InvalidArgument, PrecisionExceeded


@dataclass(frozen=True)
class PochhammerModulus:
    level: int
    polynomial: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.polynomial) - 1


@lru_cache(maxsize=None)
def pochhammer_modulus(level: int) -> PochhammerModulus:
    if level < 1:
        raise InvalidArgument(f"level must be positive, got {level}")
    return PochhammerModulus(level, poly.pochhammer(level + 1))


def _canonical(p: Sequence[int], level: int) -> tuple[int, ...]:
    m = pochhammer_modulus(level).polynomial
    # leading coefficient is (-1)^(level+1); divide by the monic associate
    sign = m[-1]
    _, rem = poly.divmod_monic(p, poly.scale(m, sign))
    return rem


@dataclass(frozen=True)
class HabiroElement:
    level: int
    representative: tuple[int, ...]

    @classmethod
    def from_poly(cls, p: Sequence[int], level: int) -> HabiroElement:
        return cls(level, _canonical(p, level))

    @classmethod
    def one(cls, level: int) -> HabiroElement:
        return cls.from_poly((1,), level)

    def __add__(self, other: HabiroElement) -> HabiroElement:
        return habiro_add(self, other)

    def __sub__(self, other: HabiroElement) -> HabiroElement:
        _same_level(self, other)
        return HabiroElement.from_poly(poly.sub(self.representative, other.representative), self.level)

    def __mul__(self, other: HabiroElement) -> HabiroElement:
        return habiro_mul(self, other)

    def is_zero(self) -> bool:
        return not self.representative

    def __str__(self) -> str:
        return poly.to_str(self.representative)


@dataclass(frozen=True)
class OneMinusQSeries:
    """Power series in h = 1 - q known modulo h^truncation."""

    truncation: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.truncation:
            raise InvalidArgument("coefficient count must equal the truncation")

    @classmethod
    def from_poly(cls, p: Sequence[int], truncation: int) -> OneMinusQSeries:
        c = list(p[:truncation]) + [0] * max(0, truncation - len(p))
        return cls(truncation, tuple(c))

    def __add__(self, other: OneMinusQSeries) -> OneMinusQSeries:
        t = min(self.truncation, other.truncation)
        return OneMinusQSeries(t, tuple(a + b for a, b in zip(self.coefficients[:t], other.coefficients[:t])))

    def __mul__(self, other: OneMinusQSeries) -> OneMinusQSeries:
        t = min(self.truncation, other.truncation)
        out = [0] * t
        for i, a in enumerate(self.coefficients[:t]):
            if a:
                for j, b in enumerate(other.coefficients[: t - i]):
                    out[i + j] += a * b
        return OneMinusQSeries(t, tuple(out))


def _same_level(a: HabiroElement, b: HabiroElement) -> None:
    if a.level != b.level:
        raise InvalidArgument(f"level mismatch: {a.level} vs {b.level}")


def from_factorial_series(fs: Sequence[Sequence[int]], level: int) -> HabiroElement:
    """Reduce sum_k fs[k](q) * (1-q)...(1-q^k) to canonical form at ``level``."""
    if len(fs) > level + 1:
        raise InvalidArgument(
            f"{len(fs)} factorial-series terms given at level {level}; "
            f"terms beyond index {level} vanish and must be dropped by the caller"
        )
    total: tuple[int, ...] = ()
    for k, f in enumerate(fs):
        total = poly.add(total, poly.mul(poly.trim(f), poly.pochhammer(k)))
    return HabiroElement.from_poly(total, level)


def habiro_add(a: HabiroElement, b: HabiroElement) -> HabiroElement:
    _same_level(a, b)
    return HabiroElement.from_poly(poly.add(a.representative, b.representative), a.level)


def habiro_mul(a: HabiroElement, b: HabiroElement) -> HabiroElement:
    _same_level(a, b)
    return HabiroElement.from_poly(poly.mul(a.representative, b.representative), a.level)


def lower_level(a: HabiroElement, level: int) -> HabiroElement:
    """Restriction map of the inverse system to a lower level."""
    if level > a.level:
        raise PrecisionExceeded(f"cannot raise level {a.level} to {level}")
    return HabiroElement.from_poly(a.representative, level)


def evaluate_at_root(a: HabiroElement, n: int) -> CyclotomicInteger:
    """Value at a primitive n-th root of unity, n <= level + 1."""
    if n < 1:
        raise InvalidArgument(f"root order must be positive, got {n}")
    if n > a.level + 1:
        raise PrecisionExceeded(
            f"evaluation at order {n} needs level >= {n - 1}, element has level {a.level}"
        )
    return cyclo_reduce(a.representative, n)


def taylor_at_one(a: HabiroElement) -> OneMinusQSeries:
    """Expansion in powers of h = 1 - q, exact modulo h^(level+1)."""
    return OneMinusQSeries.from_poly(poly.compose_one_minus(a.representative), a.level + 1)
