"""Closed Jacobi diagrams modulo AS and IHX, the Hopf structure of the
diagram algebra, and weight systems of metrized Lie algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import graphs
from .errors import InvalidArgument, ResourceLimit
from .linalg import Quotient

DEFAULT_MAX_DEGREE = 3

DiagramKey = tuple


@dataclass(frozen=True)
class JacobiDiagram:
    """Closed trivalent diagram.

    ``vertices`` lists half-edge triples in counterclockwise order;
    ``edges`` pairs the half-edges.
    """

    vertices: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        self.structure()

    def structure(self) -> graphs.Structure:
        return graphs.Structure(self.vertices, self.edges)

    @property
    def degree(self) -> int:
        return len(self.vertices) // 2

    def reverse_at(self, v: int) -> JacobiDiagram:
        vs = list(self.vertices)
        a, b, c = vs[v]
        vs[v] = (a, c, b)
        return JacobiDiagram(tuple(vs), self.edges)

    def disjoint_union(self, other: JacobiDiagram) -> JacobiDiagram:
        shift = 1 + max((d for v in self.vertices for d in v), default=-1)
        vs = self.vertices + tuple(tuple(d + shift for d in v) for v in other.vertices)
        es = self.edges + tuple((a + shift, b + shift) for a, b in other.edges)
        return JacobiDiagram(vs, es)

    def key(self) -> tuple[DiagramKey, int, bool]:
        """Canonical key, orientation sign, and whether the diagram is
        isomorphic to its own negative."""
        return _key(self.vertices, self.edges)

    @classmethod
    def from_key(cls, key: DiagramKey) -> JacobiDiagram:
        vertices, edges, _ = graphs.decode(key)
        return cls(vertices, edges)


@lru_cache(maxsize=200_000)
def _key(vertices, edges):
    return graphs.Structure(vertices, edges).canonical()


EMPTY = JacobiDiagram((), ())
THETA = JacobiDiagram(((0, 1, 2), (3, 4, 5)), ((0, 3), (1, 4), (2, 5)))


def theta_power(k: int) -> JacobiDiagram:
    d = EMPTY
    for _ in range(k):
        d = d.disjoint_union(THETA)
    return d


def key_degree(key: DiagramKey) -> int:
    return graphs.trivalent_count(key) // 2


def canonical_form(d: JacobiDiagram) -> tuple[JacobiDiagram, int]:
    key, sign, _ = d.key()
    return JacobiDiagram.from_key(key), sign


# -- linear combinations ---------------------------------------------------

@dataclass(frozen=True)
class DiagramCombination:
    """Rational combination of canonical diagrams of degree <= ``level``.

    ``truncated`` records that some product term was dropped for
    exceeding ``level``.
    """

    level: int
    terms: tuple[tuple[DiagramKey, Fraction], ...] = ()
    truncated: bool = False

    @classmethod
    def from_dict(cls, mapping: Mapping[DiagramKey, Fraction], level: int = DEFAULT_MAX_DEGREE,
                  truncated: bool = False) -> DiagramCombination:
        dropped = False
        items = []
        for k, c in mapping.items():
            if c == 0:
                continue
            if key_degree(k) > level:
                dropped = True
                continue
            items.append((k, Fraction(c)))
        return cls(level, tuple(sorted(items)), truncated or dropped)

    @classmethod
    def from_diagrams(cls, pairs: Iterable[tuple[Fraction, JacobiDiagram]],
                      level: int = DEFAULT_MAX_DEGREE) -> DiagramCombination:
        acc: dict = {}
        for c, d in pairs:
            k, s, _ = d.key()
            acc[k] = acc.get(k, 0) + Fraction(c) * s
        return cls.from_dict(acc, level)

    @classmethod
    def of(cls, d: JacobiDiagram, coeff=1, level: int = DEFAULT_MAX_DEGREE) -> DiagramCombination:
        return cls.from_diagrams([(coeff, d)], level)

    @classmethod
    def one(cls, level: int = DEFAULT_MAX_DEGREE) -> DiagramCombination:
        return cls.of(EMPTY, 1, level)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, d: JacobiDiagram | DiagramKey) -> Fraction:
        if isinstance(d, JacobiDiagram):
            k, s, _ = d.key()
            return self.as_dict().get(k, Fraction(0)) * s
        return self.as_dict().get(d, Fraction(0))

    def degree_part(self, deg: int) -> DiagramCombination:
        return DiagramCombination(self.level, tuple((k, c) for k, c in self.terms if key_degree(k) == deg))

    def __add__(self, other: DiagramCombination) -> DiagramCombination:
        acc = self.as_dict()
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) + c
        return DiagramCombination.from_dict(acc, min(self.level, other.level),
                                            self.truncated or other.truncated)

    def __neg__(self) -> DiagramCombination:
        return self.scale(-1)

    def __sub__(self, other: DiagramCombination) -> DiagramCombination:
        return self + (-other)

    def scale(self, k) -> DiagramCombination:
        return DiagramCombination.from_dict({key: c * k for key, c in self.terms}, self.level, self.truncated)

    def __rmul__(self, k) -> DiagramCombination:
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, DiagramCombination):
            return diagram_mul(self, other)
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms


def _union_key(a: DiagramKey, b: DiagramKey) -> DiagramKey:
    return tuple(sorted(a + b))


def diagram_mul(a: DiagramCombination, b: DiagramCombination) -> DiagramCombination:
    """Disjoint-union product, extended bilinearly."""
    level = min(a.level, b.level)
    acc: dict = {}
    for ka, ca in a.terms:
        for kb, cb in b.terms:
            k = _union_key(ka, kb)
            acc[k] = acc.get(k, 0) + ca * cb
    return DiagramCombination.from_dict(acc, level, a.truncated or b.truncated)


# -- Hopf structure --------------------------------------------------------

def coproduct(c: DiagramCombination) -> dict[tuple[DiagramKey, DiagramKey], Fraction]:
    """Sum over ordered splittings of the connected components."""
    out: dict = {}
    for key, coeff in c.terms:
        n = len(key)
        for r in range(n + 1):
            for left in combinations(range(n), r):
                ls = set(left)
                pair = (tuple(key[i] for i in left), tuple(key[i] for i in range(n) if i not in ls))
                out[pair] = out.get(pair, 0) + coeff
    return {k: v for k, v in out.items() if v != 0}


def counit(c: DiagramCombination) -> Fraction:
    return c.as_dict().get((), Fraction(0))


def tensor_square(c: DiagramCombination) -> dict[tuple[DiagramKey, DiagramKey], Fraction]:
    out: dict = {}
    for ka, ca in c.terms:
        for kb, cb in c.terms:
            out[(ka, kb)] = out.get((ka, kb), 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _reduce_tensor(t: Mapping[tuple[DiagramKey, DiagramKey], Fraction], max_total: int,
                   max_degree: int) -> dict:
    out: dict = {}
    for (ka, kb), c in t.items():
        da, db = key_degree(ka), key_degree(kb)
        if da + db > max_total:
            continue
        va = _key_coordinates(ka, max_degree)
        vb = _key_coordinates(kb, max_degree)
        block = out.setdefault((da, db), {})
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    if y:
                        block[(i, j)] = block.get((i, j), 0) + c * x * y
    return {bd: {ij: v for ij, v in blk.items() if v != 0} for bd, blk in out.items()}


def is_group_like(s: DiagramCombination, truncation: int, max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    """Whether the coproduct of ``s`` equals its tensor square in every
    bidegree of total degree <= ``truncation``, modulo AS/IHX."""
    if counit(s) != 1:
        raise InvalidArgument("a group-like element has constant term 1")
    truncation = min(truncation, s.level)
    if truncation > max_degree:
        raise ResourceLimit(f"truncation {truncation} exceeds the degree cap {max_degree}")
    lhs = _reduce_tensor(coproduct(s), truncation, max_degree)
    rhs = _reduce_tensor(tensor_square(s), truncation, max_degree)
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, {}) == rhs.get(k, {}) for k in keys)


def exp_combination(c: DiagramCombination) -> DiagramCombination:
    """Truncated exponential of a combination without constant term."""
    if counit(c) != 0:
        raise InvalidArgument("exponential needs zero constant term")
    total = DiagramCombination.one(c.level)
    power = DiagramCombination.one(c.level)
    for n in range(1, c.level + 1):
        power = diagram_mul(power, c).scale(Fraction(1, n))
        total = total + power
    return DiagramCombination(total.level, total.terms, False)


# -- AS / IHX quotient -----------------------------------------------------

@dataclass(frozen=True)
class Relation:
    kind: str
    terms: tuple[tuple[int, JacobiDiagram], ...]

    def combination(self, level: int) -> DiagramCombination:
        return DiagramCombination.from_diagrams(self.terms, level)


def _configurations(nv: int):
    """Closed trivalent multigraphs on ``nv`` vertices, up to relabeling of
    vertices and of half-edges at a vertex (orderly, with repeats)."""
    free = [[True] * 3 for _ in range(nv)]
    pairs: list[tuple[int, int]] = []

    def rec():
        d = next((3 * v + s for v in range(nv) for s in range(3) if free[v][s]), None)
        if d is None:
            yield list(pairs)
            return
        v, s = divmod(d, 3)
        free[v][s] = False
        fresh_used = False
        for w in range(nv):
            slots = [t for t in range(3) if free[w][t]]
            if not slots:
                continue
            untouched = w != v and len(slots) == 3
            if untouched:
                if fresh_used:
                    continue
                fresh_used = True
            t = slots[0]
            free[w][t] = False
            pairs.append((d, 3 * w + t))
            yield from rec()
            pairs.pop()
            free[w][t] = True
        free[v][s] = True

    yield from rec()


@lru_cache(maxsize=None)
def enumerate_diagrams(degree: int) -> tuple[DiagramKey, ...]:
    """Canonical keys of every closed diagram of ``degree`` (including those
    that vanish by AS), products of components last."""
    if degree == 0:
        return ((),)
    nv = 2 * degree
    keys = set()
    for pairs in _configurations(nv):
        vertices = tuple((3 * v, 3 * v + 1, 3 * v + 2) for v in range(nv))
        keys.add(_key(vertices, tuple(pairs))[0])
    return tuple(sorted(keys, key=lambda k: (len(k), k)))


def _relations_for(key: DiagramKey) -> list[Relation]:
    d = JacobiDiagram.from_key(key)
    rels = [Relation("AS", ((1, d), (1, d.reverse_at(v)))) for v in range(len(d.vertices))]
    owner = {h: i for i, vx in enumerate(d.vertices) for h in vx}
    for x, y in d.edges:
        u, v = owner[x], owner[y]
        if u == v:
            continue
        rels.append(Relation("IHX", ihx_terms(d, x, y)))
    return rels


def _rotate_to(vx: tuple, h) -> tuple:
    i = vx.index(h)
    return vx[i:] + vx[:i]


def ihx_terms(d: JacobiDiagram, x: int, y: int) -> tuple[tuple[int, JacobiDiagram], ...]:
    """The three diagrams of the IHX relation at the edge ``x``--``y``.

    With u = (x, p1, p2) and v = (y, p3, p4) the relation reads
    D(p1 p2 | p3 p4) + D(p2 p3 | p1 p4) + D(p3 p1 | p2 p4) = 0,
    the diagrammatic form of the Jacobi identity with p4 held fixed.
    """
    owner = {h: i for i, vx in enumerate(d.vertices) for h in vx}
    u, v = owner[x], owner[y]
    if u == v:
        raise InvalidArgument("IHX needs an edge between distinct vertices")
    _, p1, p2 = _rotate_to(d.vertices[u], x)
    _, p3, p4 = _rotate_to(d.vertices[v], y)
    out = []
    for a, b, c in ((p1, p2, p3), (p2, p3, p1), (p3, p1, p2)):
        vs = list(d.vertices)
        vs[u] = (x, a, b)
        vs[v] = (y, c, p4)
        out.append((1, JacobiDiagram(tuple(vs), d.edges)))
    return tuple(out)


@dataclass(frozen=True)
class QuotientBasis:
    degree: int
    diagrams: tuple[DiagramKey, ...]
    relations: tuple[Relation, ...]
    relation_matrix: tuple[tuple[Fraction, ...], ...]
    quotient: Quotient = field(repr=False, compare=False)

    @property
    def basis_diagrams(self) -> tuple[DiagramKey, ...]:
        return tuple(self.diagrams[c] for c in self.quotient.free)

    @property
    def dimension(self) -> int:
        return self.quotient.dimension

    def vector(self, c: DiagramCombination) -> list[Fraction]:
        index = {k: i for i, k in enumerate(self.diagrams)}
        v = [Fraction(0)] * len(self.diagrams)
        for k, coeff in c.terms:
            if key_degree(k) == self.degree:
                v[index[k]] += coeff
        return v

    def coordinates(self, c: DiagramCombination) -> tuple[Fraction, ...]:
        return self.quotient.coordinates(self.vector(c))


@lru_cache(maxsize=None)
def _generate(degree: int) -> QuotientBasis:
    keys = enumerate_diagrams(degree)
    index = {k: i for i, k in enumerate(keys)}
    relations: list[Relation] = []
    rows = []
    for k in keys:
        for rel in _relations_for(k):
            relations.append(rel)
            row = [Fraction(0)] * len(keys)
            for coeff, d in rel.terms:
                rk, sign, _ = d.key()
                row[index[rk]] += coeff * sign
            rows.append(row)
    q = Quotient(rows, len(keys))
    return QuotientBasis(degree, keys, tuple(relations), tuple(tuple(r) for r in q.rows), q)


def generate_relations(degree: int, max_degree: int = DEFAULT_MAX_DEGREE) -> QuotientBasis:
    if degree < 0:
        raise InvalidArgument("degree must be nonnegative")
    if degree > max_degree:
        raise ResourceLimit(f"degree {degree} exceeds the configured cap {max_degree}")
    return _generate(degree)


@lru_cache(maxsize=None)
def _key_coordinates(key: DiagramKey, max_degree: int) -> tuple[Fraction, ...]:
    qb = generate_relations(key_degree(key), max_degree)
    return qb.coordinates(DiagramCombination(key_degree(key), ((key, Fraction(1)),)))


def reduce(c: DiagramCombination, max_degree: int = DEFAULT_MAX_DEGREE) -> dict[int, tuple[Fraction, ...]]:
    """Coordinates of ``c`` in the quotient basis of each degree present."""
    degrees = sorted({key_degree(k) for k, _ in c.terms})
    return {d: generate_relations(d, max_degree).coordinates(c) for d in degrees}


def is_zero_mod_relations(c: DiagramCombination, max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    return all(not any(v) for v in reduce(c, max_degree).values())


# -- weight systems ---------------------------------------------------------

@dataclass(frozen=True)
class WeightData:
    """Metrized Lie algebra: structure constants [e_a, e_b] = sum_c c[a][b][c] e_c
    and an invariant symmetric bilinear form."""

    name: str
    dimension: int
    structure_tensor: tuple
    metric: tuple

    def __post_init__(self):
        n = self.dimension
        c = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in self.structure_tensor)
        g = tuple(tuple(Fraction(x) for x in row) for row in self.metric)
        object.__setattr__(self, "structure_tensor", c)
        object.__setattr__(self, "metric", g)
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise InvalidArgument("structure tensor must be dimension^3")
        if len(g) != n or any(len(r) != n for r in g):
            raise InvalidArgument("metric must be dimension x dimension")
        for a in range(n):
            for b in range(n):
                if g[a][b] != g[b][a]:
                    raise InvalidArgument("metric is not symmetric")
                for k in range(n):
                    if c[a][b][k] != -c[b][a][k]:
                        raise InvalidArgument("structure tensor is not antisymmetric in its first two indices")
        f = self.lowered
        for (a, b, k), val in f.items():
            for perm in ((b, k, a), (k, a, b)):
                if f.get(perm, 0) != val:
                    raise InvalidArgument("lowered structure tensor is not totally antisymmetric")
        self.inverse_metric  # raises on a singular metric

    @property
    def lowered(self) -> dict[tuple[int, int, int], Fraction]:
        n, c, g = self.dimension, self.structure_tensor, self.metric
        out = {}
        for a in range(n):
            for b in range(n):
                for k in range(n):
                    v = sum((c[a][b][d] * g[d][k] for d in range(n)), Fraction(0))
                    if v:
                        out[(a, b, k)] = v
        return out

    @property
    def inverse_metric(self) -> dict[tuple[int, int], Fraction]:
        n = self.dimension
        aug = [list(self.metric[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        from .linalg import rref
        rows, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise InvalidArgument("metric is singular")
        return {(i, j): rows[i][n + j] for i in range(n) for j in range(n) if rows[i][n + j]}


def _epsilon_data() -> WeightData:
    eps = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for (a, b, c), s in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                         (1, 0, 2): -1, (0, 2, 1): -1, (2, 1, 0): -1}.items():
        eps[a][b][c] = s
    return WeightData("epsilon", 3, eps, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def _sl2_data() -> WeightData:
    # basis H, E, F: [H,E] = 2E, [H,F] = -2F, [E,F] = H; trace form of C^2
    H, E, F = 0, 1, 2
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[H][E][E], c[E][H][E] = 2, -2
    c[H][F][F], c[F][H][F] = -2, 2
    c[E][F][H], c[F][E][H] = 1, -1
    return WeightData("sl2", 3, c, [[2, 0, 0], [0, 0, 1], [0, 1, 0]])


EPSILON = _epsilon_data()
SL2 = _sl2_data()
BUILTIN_WEIGHT_DATA = {"epsilon": EPSILON, "sl2": SL2}


@lru_cache(maxsize=None)
def _tensors(w: WeightData):
    return tuple(w.lowered.items()), w.inverse_metric


def weight_system(w: WeightData, d: JacobiDiagram) -> Fraction:
    """Contract one lowered structure tensor per vertex (indices in the
    vertex's cyclic order) against the inverse metric on every edge."""
    f_items, ginv = _tensors(w)
    st = d.structure()
    partner = st.partner
    order = _vertex_order(d)
    open_darts: list[int] = []
    table: dict[tuple, Fraction] = {(): Fraction(1)}
    for vi in order:
        vx = d.vertices[vi]
        table = {key + idx: val * f for key, val in table.items() for idx, f in f_items}
        open_darts.extend(vx)
        for h in vx:
            p = partner[h]
            if h in open_darts and p in open_darts:
                i, j = open_darts.index(h), open_darts.index(p)
                table = _contract(table, i, j, ginv)
                for pos in sorted((i, j), reverse=True):
                    del open_darts[pos]
        if not table:
            return Fraction(0)
    assert not open_darts
    return table.get((), Fraction(0))


def _contract(table, i, j, ginv):
    out: dict = {}
    lo, hi = sorted((i, j))
    for key, val in table.items():
        g = ginv.get((key[i], key[j]))
        if g:
            nk = key[:lo] + key[lo + 1:hi] + key[hi + 1:]
            out[nk] = out.get(nk, 0) + val * g
    return {k: v for k, v in out.items() if v != 0}


def _vertex_order(d: JacobiDiagram) -> list[int]:
    owner = {h: i for i, vx in enumerate(d.vertices) for h in vx}
    partner = {}
    for a, b in d.edges:
        partner[a], partner[b] = b, a
    seen: list[int] = []
    for s in range(len(d.vertices)):
        if s in seen:
            continue
        queue = [s]
        seen.append(s)
        while queue:
            v = queue.pop(0)
            for h in d.vertices[v]:
                u = owner[partner[h]]
                if u not in seen:
                    seen.append(u)
                    queue.append(u)
    return seen


@lru_cache(maxsize=None)
def key_weight(w: WeightData, key: DiagramKey) -> Fraction:
    """Weight of the canonically oriented diagram with ``key``."""
    return weight_system(w, JacobiDiagram.from_key(key))


@dataclass(frozen=True)
class HSeries:
    truncation: int
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.truncation:
            raise InvalidArgument("coefficient count must equal the truncation")

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coefficients)


def weight_series(w: WeightData, c: DiagramCombination, truncation: int) -> HSeries:
    """sum over terms of coefficient * W(D) * h^deg(D), modulo h^truncation."""
    coeffs = [Fraction(0)] * truncation
    for key, coeff in c.terms:
        deg = key_degree(key)
        if deg < truncation:
            coeffs[deg] += coeff * key_weight(w, key)
    return HSeries(truncation, tuple(coeffs))
