"""H_1 of a genus-g surface with one boundary component, with its
intersection form."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..errors import InvalidArgument

_NAME = re.compile(r"^([ab])(\d+)$")


@dataclass(frozen=True)
class SymplecticLattice:
    """Basis a_1..a_g, b_1..b_g (indices 0..2g-1) with omega(a_i, b_j) = delta_ij."""

    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidArgument("genus must be nonnegative")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @cached_property
    def form(self) -> tuple[tuple[int, ...], ...]:
        g = self.genus
        m = [[0] * (2 * g) for _ in range(2 * g)]
        for i in range(g):
            m[i][g + i] = 1
            m[g + i][i] = -1
        return tuple(tuple(r) for r in m)

    def basis_name(self, i: int) -> str:
        g = self.genus
        if not 0 <= i < 2 * g:
            raise InvalidArgument(f"basis index {i} out of range for genus {g}")
        return f"a{i + 1}" if i < g else f"b{i - g + 1}"

    def basis_index(self, name: str) -> int:
        m = _NAME.match(name.strip())
        if not m:
            raise InvalidArgument(f"not a basis class name: {name!r}")
        j = int(m.group(2))
        if not 1 <= j <= self.genus:
            raise InvalidArgument(f"{name} is not a class of the genus-{self.genus} surface")
        return j - 1 if m.group(1) == "a" else self.genus + j - 1

    def basis_vector(self, name_or_index) -> tuple[int, ...]:
        i = self.basis_index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def omega(self, x: Sequence, y: Sequence):
        if len(x) != self.rank or len(y) != self.rank:
            raise InvalidArgument(f"vectors must have length {self.rank}")
        w = self.form
        return sum(x[i] * w[i][j] * y[j] for i in range(self.rank) for j in range(self.rank) if w[i][j])


def omega(x: Sequence, y: Sequence):
    """Intersection pairing of two coordinate vectors of equal even length."""
    if len(x) != len(y) or len(x) % 2:
        raise InvalidArgument("omega needs two vectors of the same even length")
    return SymplecticLattice(len(x) // 2).omega(x, y)


def as_fraction_vector(v: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)
