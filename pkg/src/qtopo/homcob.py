"""Cobordisms over a once-punctured genus-g surface, seen through H_1.

A cobordism is recorded as (V; m_plus, m_minus): V = Z^n / (column span
of ``presentation``) and the markings send the basis a_1..a_g, b_1..b_g of
H_1(surface) to vectors of Z^n (one column per basis class).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import InvalidArgument
from .smith import determinant, hermite_rows, identity, integer_kernel, matmul, smith_normal_form
from .symplectic.lattice import SymplecticLattice


def _matrix(rows, nrows: int, ncols: int, what: str) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise InvalidArgument(f"{what} must be {nrows}x{ncols}")
    return rows


@dataclass(frozen=True)
class MappingClass:
    genus: int
    matrix: tuple[tuple[int, ...], ...]
    name: str | None = None

    def __post_init__(self):
        n = 2 * self.genus
        object.__setattr__(self, "matrix", _matrix(self.matrix, n, n, "mapping class matrix"))
        if not is_symplectic(self.matrix, self.genus):
            raise InvalidArgument("matrix does not preserve the intersection form")

    @classmethod
    def identity(cls, genus: int, name: str | None = None) -> MappingClass:
        return cls(genus, identity(2 * genus), name)

    def __mul__(self, other: MappingClass) -> MappingClass:
        if self.genus != other.genus:
            raise InvalidArgument("genus mismatch")
        return MappingClass(self.genus, matmul(self.matrix, other.matrix))

    def inverse(self) -> MappingClass:
        # symplectic inverse: J^-1 M^T J
        j = SymplecticLattice(self.genus).form
        jinv = [[-x for x in row] for row in j]
        mt = [list(c) for c in zip(*self.matrix)] if self.matrix else []
        return MappingClass(self.genus, matmul(matmul(jinv, mt), j))

    def image(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in self.matrix)


def is_symplectic(m, genus: int) -> bool:
    w = SymplecticLattice(genus).form
    mt = [list(c) for c in zip(*m)] if m else []
    return matmul(matmul(mt, w), m) == [list(r) for r in w]


def dehn_twist(c: Sequence[int], inverse: bool = False) -> MappingClass:
    """Homology action x -> x + omega(x, c) c of the twist along a curve of class c."""
    if len(c) % 2:
        raise InvalidArgument("class vector must have even length")
    lat = SymplecticLattice(len(c) // 2)
    s = -1 if inverse else 1
    cols = []
    for j in range(lat.rank):
        e = lat.basis_vector(j)
        w = lat.omega(e, c)
        cols.append([e[i] + s * w * c[i] for i in range(lat.rank)])
    return MappingClass(lat.genus, [list(r) for r in zip(*cols)] if cols else [])


def is_torelli(f: MappingClass) -> bool:
    return [list(r) for r in f.matrix] == identity(2 * f.genus)


@dataclass(frozen=True)
class HomologyCobordism:
    genus: int
    presentation: tuple[tuple[int, ...], ...]
    m_plus: tuple[tuple[int, ...], ...]
    m_minus: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.m_plus)
        r = len(self.presentation[0]) if self.presentation else 0
        object.__setattr__(self, "presentation", _matrix(self.presentation, n, r, "presentation"))
        object.__setattr__(self, "m_plus", _matrix(self.m_plus, n, 2 * self.genus, "m_plus"))
        object.__setattr__(self, "m_minus", _matrix(self.m_minus, n, 2 * self.genus, "m_minus"))

    @classmethod
    def build(cls, genus: int, presentation, m_plus, m_minus) -> HomologyCobordism:
        """Constructor that accepts a presentation with zero relations given as []."""
        n = len(m_plus)
        if not presentation or not any(len(r) for r in presentation):
            presentation = tuple(() for _ in range(n))
        return cls(genus, presentation, m_plus, m_minus)

    @property
    def generators(self) -> int:
        return len(self.m_plus)

    @property
    def relations(self) -> int:
        return len(self.presentation[0]) if self.presentation else 0

    @cached_property
    def _smith(self):
        return smith_normal_form(self.presentation, self.relations)

    @cached_property
    def reduced(self) -> HomologyCobordism:
        """Equivalent presentation by Smith normal form: unit invariant factors
        are dropped, torsion generators come first, then free ones."""
        sf = self._smith
        n = self.generators
        diag = list(sf.diagonal) + [0] * (n - len(sf.diagonal))
        mp = matmul(sf.left, self.m_plus) if n else []
        mm = matmul(sf.left, self.m_minus) if n else []
        keep = [i for i in range(n) if diag[i] != 1]
        torsion = [i for i in keep if diag[i] > 1]
        free = [i for i in keep if diag[i] == 0]
        rows_p, rows_m = [], []
        for i in torsion:
            rows_p.append([x % diag[i] for x in mp[i]])
            rows_m.append([x % diag[i] for x in mm[i]])
        for i in free:
            rows_p.append(list(mp[i]))
            rows_m.append(list(mm[i]))
        k = len(torsion)
        pres = [[diag[i] if c == r else 0 for c in range(k)] for r, i in enumerate(torsion)]
        pres += [[0] * k for _ in free]
        return HomologyCobordism(self.genus, pres, rows_p, rows_m)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self._smith.diagonal if d > 1)

    @property
    def free_rank(self) -> int:
        return self.generators - self._smith.rank

    @cached_property
    def invariant(self):
        """Isomorphism invariant of the marked group (V; m_plus, m_minus).

        Complete when the markings jointly generate V, which holds for every
        homology cobordism and is preserved by composition.
        """
        n, g2 = self.generators, 2 * self.genus
        big = [list(self.m_plus[i]) + list(self.m_minus[i]) + list(self.presentation[i]) for i in range(n)]
        ncols = 2 * g2 + self.relations
        kern = integer_kernel(big, ncols)
        lattice = hermite_rows([v[: 2 * g2] for v in kern], 2 * g2)
        coker = smith_normal_form(big, ncols) if n else None
        coker_inv = tuple(d for d in coker.diagonal if d != 1) + (0,) * (n - coker.rank) if n else ()
        return (self.genus, self.torsion, self.free_rank, lattice, tuple(sorted(coker_inv)))

    def is_equivalent(self, other: HomologyCobordism) -> bool:
        return self.invariant == other.invariant


def identity_cylinder(genus: int) -> HomologyCobordism:
    if genus < 0:
        raise InvalidArgument("genus must be nonnegative")
    eye = identity(2 * genus)
    return HomologyCobordism.build(genus, [], eye, eye)


def mapping_cylinder(f: MappingClass) -> HomologyCobordism:
    """Product cobordism with bottom marked by the identity and top by f."""
    if not is_symplectic(f.matrix, f.genus):
        raise InvalidArgument("mapping class matrix is not symplectic")
    return HomologyCobordism.build(f.genus, [], f.matrix, identity(2 * f.genus))


def compose(m: HomologyCobordism, n: HomologyCobordism) -> HomologyCobordism:
    """Glue the top of ``m`` to the bottom of ``n``: the pushout of
    V_m <- H -> V_n, bottom marking from ``m``, top marking from ``n``."""
    if m.genus != n.genus:
        raise InvalidArgument(f"genus mismatch: {m.genus} vs {n.genus}")
    g2 = 2 * m.genus
    a, b = m.generators, n.generators
    ra, rb = m.relations, n.relations
    rows = []
    for i in range(a):
        rows.append(list(m.presentation[i]) + [0] * rb + [m.m_plus[i][x] for x in range(g2)])
    for i in range(b):
        rows.append([0] * ra + list(n.presentation[i]) + [-n.m_minus[i][x] for x in range(g2)])
    m_minus = [list(r) for r in m.m_minus] + [[0] * g2 for _ in range(b)]
    m_plus = [[0] * g2 for _ in range(a)] + [list(r) for r in n.m_plus]
    return HomologyCobordism.build(m.genus, rows, m_plus, m_minus).reduced


def is_homology_cobordism(m: HomologyCobordism) -> bool:
    """Both markings induce isomorphisms H_1(surface) -> V."""
    g2 = 2 * m.genus
    if m.torsion or m.free_rank != g2:
        return False
    r = m.reduced
    return abs(determinant(r.m_plus)) == 1 and abs(determinant(r.m_minus)) == 1


def is_homology_cylinder(m: HomologyCobordism) -> bool:
    return is_homology_cobordism(m) and m.reduced.m_plus == m.reduced.m_minus


def word_class(genus: int, twists: Sequence[str]) -> MappingClass:
    """Product T_{c1}^{e1} T_{c2}^{e2} ... of twists (leftmost factor applied last)."""
    lat = SymplecticLattice(genus)
    out = MappingClass.identity(genus)
    for tok in twists:
        tok = tok.strip()
        inverse = tok.startswith("-")
        c = parse_class(lat, tok[1:] if inverse else tok)
        out = out * dehn_twist(c, inverse=inverse)
    return out


def parse_class(lat: SymplecticLattice, text: str) -> tuple[int, ...]:
    """``a1``, ``a1+b2``, ``2a1-b1`` style integer combinations of basis classes."""
    import re

    v = [0] * lat.rank
    text = text.replace(" ", "")
    if not text:
        raise InvalidArgument("empty class")
    pos = 0
    for m in re.finditer(r"([+-]?)(\d*)([ab]\d+)", text):
        if m.start() != pos or (pos > 0 and not m.group(1)):
            raise InvalidArgument(f"cannot parse class {text!r}")
        k = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            k = -k
        v[lat.basis_index(m.group(3))] += k
        pos = m.end()
    if pos != len(text):
        raise InvalidArgument(f"cannot parse class {text!r}")
    return tuple(v)
