"""Connected uni-trivalent trees with leaves labeled in H_Q, modulo AS and
IHX, and the bracket that glues a leaf of one tree to a leaf of another."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .. import graphs
from ..errors import InvalidArgument, ResourceLimit
from ..linalg import Quotient
from .lattice import SymplecticLattice

DEFAULT_MAX_DEGREE = 3

TreeKey = tuple


@dataclass(frozen=True)
class LabeledTree:
    """A tree with oriented trivalent vertices; each leaf is ``(dart, vector)``
    with the vector in coordinates a_1..a_g, b_1..b_g."""

    genus: int
    vertices: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]
    leaves: tuple[tuple[int, tuple], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "leaves", tuple((d, tuple(Fraction(x) for x in v)) for d, v in self.leaves))
        for _, v in self.leaves:
            if len(v) != 2 * self.genus:
                raise InvalidArgument(f"leaf label needs {2 * self.genus} coordinates")
        st = graphs.Structure(self.vertices, self.edges, [(d, i) for i, (d, _) in enumerate(self.leaves)])
        if len(st.components()) != 1:
            raise InvalidArgument("tree is not connected")
        if len(self.leaves) != len(self.vertices) + 2:
            raise InvalidArgument("a trivalent tree has two more leaves than vertices")

    @property
    def degree(self) -> int:
        return len(self.vertices)

    def reverse_at(self, v: int) -> LabeledTree:
        vs = list(self.vertices)
        a, b, c = vs[v]
        vs[v] = (a, c, b)
        return LabeledTree(self.genus, tuple(vs), self.edges, self.leaves)

    def expand(self) -> TreeCombination:
        """Multilinear expansion of the leaf labels over the lattice basis."""
        acc: dict = {}
        supports = [[(i, c) for i, c in enumerate(v) if c] for _, v in self.leaves]
        for choice in product(*supports):
            coeff = Fraction(1)
            legs = []
            for (dart, _), (i, c) in zip(self.leaves, choice):
                coeff *= c
                legs.append((dart, i))
            key, sign, _ = _tree_key(self.vertices, self.edges, tuple(legs))
            acc[key] = acc.get(key, 0) + coeff * sign
        return TreeCombination.from_dict(self.genus, acc)


@lru_cache(maxsize=200_000)
def _tree_key(vertices, edges, legs):
    return graphs.Structure(vertices, edges, legs).canonical()


def strut(x: Sequence, y: Sequence, genus: int | None = None) -> LabeledTree:
    g = len(x) // 2 if genus is None else genus
    return LabeledTree(g, (), ((0, 1),), ((0, tuple(x)), (1, tuple(y))))


def from_shape(shape, labels: Sequence[Sequence], genus: int) -> LabeledTree:
    """Build a tree from a planar code.

    ``shape`` is a pair ``(i, j)`` for a strut, or a triple whose entries
    are leaf indices or pairs ``(u, v)``; a pair nested inside a triple is a
    vertex with cyclic order (parent, u, v).  Triples list a vertex's
    neighbours in cyclic order.
    """
    vertices, edges, leaves = [], [], []
    counter = [0]
    used: set[int] = set()

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    def leaf(i):
        if not isinstance(i, int) or not 0 <= i < len(labels):
            raise InvalidArgument(f"leaf index {i!r} out of range")
        if i in used:
            raise InvalidArgument(f"leaf {i} used twice")
        used.add(i)
        d = fresh()
        leaves.append((d, tuple(labels[i])))
        return d

    def node(item):
        """Return the dart that attaches ``item`` to its parent."""
        if isinstance(item, int):
            return leaf(item)
        if len(item) != 2:
            raise InvalidArgument(f"inner vertex must have two children: {item!r}")
        up, l, r = fresh(), fresh(), fresh()
        vertices.append((up, l, r))
        edges.append((l, node(item[0])))
        edges.append((r, node(item[1])))
        return up

    if len(shape) == 2:
        edges.append((node(shape[0]), node(shape[1])))
    elif len(shape) == 3:
        ds = (fresh(), fresh(), fresh())
        vertices.append(ds)
        for d, item in zip(ds, shape):
            edges.append((d, node(item)))
    else:
        raise InvalidArgument("tree shape must be a pair (strut) or a triple")
    if len(used) != len(labels):
        raise InvalidArgument("every leaf label must be used exactly once")
    return LabeledTree(genus, tuple(vertices), tuple(edges), tuple(leaves))


def key_degree(key: TreeKey) -> int:
    return graphs.trivalent_count(key)


def key_labels(key: TreeKey) -> tuple[int, ...]:
    _, _, legs = graphs.decode(key)
    return tuple(sorted(lbl for _, lbl in legs))


@dataclass(frozen=True)
class TreeCombination:
    genus: int
    terms: tuple[tuple[TreeKey, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, genus: int, mapping: Mapping[TreeKey, Fraction]) -> TreeCombination:
        return cls(genus, tuple(sorted((k, Fraction(c)) for k, c in mapping.items() if c != 0)))

    @classmethod
    def of(cls, tree: LabeledTree, coeff=1) -> TreeCombination:
        return tree.expand().scale(coeff)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def _check(self, other: TreeCombination) -> None:
        if self.genus != other.genus:
            raise InvalidArgument(f"genus mismatch: {self.genus} vs {other.genus}")

    def __add__(self, other: TreeCombination) -> TreeCombination:
        self._check(other)
        acc = self.as_dict()
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) + c
        return TreeCombination.from_dict(self.genus, acc)

    def scale(self, k) -> TreeCombination:
        return TreeCombination.from_dict(self.genus, {key: c * k for key, c in self.terms})

    def __neg__(self) -> TreeCombination:
        return self.scale(-1)

    def __sub__(self, other: TreeCombination) -> TreeCombination:
        return self + (-other)

    def __rmul__(self, k) -> TreeCombination:
        return self.scale(k)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, tree: LabeledTree) -> Fraction:
        """Coefficient of a basis-labeled tree, orientation sign included."""
        legs = []
        for d, v in tree.leaves:
            nz = [i for i, c in enumerate(v) if c]
            if len(nz) != 1 or v[nz[0]] != 1:
                raise InvalidArgument("coefficient lookup needs basis-vector labels")
            legs.append((d, nz[0]))
        key, sign, _ = _tree_key(tree.vertices, tree.edges, tuple(legs))
        return self.as_dict().get(key, Fraction(0)) * sign


# -- AS / IHX quotient -----------------------------------------------------

def _tree_shapes(n: int):
    """Every unrooted trivalent tree on leaves 0..n-1 (n >= 2), built by
    inserting leaves into edges.  Yields (vertices, edges, leaf darts)."""
    if n == 2:
        yield (), ((0, 1),), (0, 1)
        return
    for vertices, edges, leaf_darts in _tree_shapes(n - 1):
        top = 1 + max([d for v in vertices for d in v] + list(leaf_darts))
        for i, (a, b) in enumerate(edges):
            x, y, z, leaf = top, top + 1, top + 2, top + 3
            new_edges = edges[:i] + edges[i + 1:] + ((a, x), (y, b), (z, leaf))
            yield vertices + ((x, y, z),), new_edges, leaf_darts + (leaf,)


@lru_cache(maxsize=None)
def _block_keys(degree: int, labels: tuple[int, ...]) -> tuple[TreeKey, ...]:
    keys = set()
    shapes = list(_tree_shapes(degree + 2))
    for perm in set(permutations(labels)):
        for vertices, edges, leaf_darts in shapes:
            legs = tuple(zip(leaf_darts, perm))
            keys.add(_tree_key(vertices, edges, legs)[0])
    return tuple(sorted(keys))


@dataclass(frozen=True)
class TreeRelation:
    kind: str
    terms: tuple[tuple[int, tuple, tuple, tuple], ...]  # (coeff, vertices, edges, legs)


def _tree_relations(key: TreeKey) -> list[TreeRelation]:
    vertices, edges, legs = graphs.decode(key)
    rels = []
    for v in range(len(vertices)):
        vs = list(vertices)
        a, b, c = vs[v]
        vs[v] = (a, c, b)
        rels.append(TreeRelation("AS", ((1, vertices, edges, legs), (1, tuple(vs), edges, legs))))
    owner = {h: i for i, vx in enumerate(vertices) for h in vx}
    for x, y in edges:
        if x in owner and y in owner and owner[x] != owner[y]:
            rels.append(TreeRelation("IHX", tuple((c, vs, edges, legs) for c, vs in _ihx(vertices, owner, x, y))))
    return rels


def _ihx(vertices, owner, x, y):
    u, v = owner[x], owner[y]

    def rot(vx, h):
        i = vx.index(h)
        return vx[i:] + vx[:i]

    _, p1, p2 = rot(vertices[u], x)
    _, p3, p4 = rot(vertices[v], y)
    for a, b, c in ((p1, p2, p3), (p2, p3, p1), (p3, p1, p2)):
        vs = list(vertices)
        vs[u] = (x, a, b)
        vs[v] = (y, c, p4)
        yield 1, tuple(vs)


@dataclass(frozen=True)
class TreeBlock:
    """AS/IHX quotient among trees of one degree and one leaf-label multiset."""

    degree: int
    labels: tuple[int, ...]
    trees: tuple[TreeKey, ...]
    relations: tuple[TreeRelation, ...]
    quotient: Quotient

    @property
    def basis(self) -> tuple[TreeKey, ...]:
        return tuple(self.trees[c] for c in self.quotient.free)


@lru_cache(maxsize=None)
def tree_block(degree: int, labels: tuple[int, ...]) -> TreeBlock:
    keys = _block_keys(degree, labels)
    index = {k: i for i, k in enumerate(keys)}
    rels, rows = [], []
    for k in keys:
        for rel in _tree_relations(k):
            row = [Fraction(0)] * len(keys)
            for c, vs, es, lg in rel.terms:
                rk, sign, _ = _tree_key(vs, es, lg)
                row[index[rk]] += c * sign
            rels.append(rel)
            rows.append(row)
    return TreeBlock(degree, labels, keys, tuple(rels), Quotient(rows, len(keys)))


def _blocks(c: TreeCombination, max_degree: int) -> dict:
    groups: dict = {}
    for k, coeff in c.terms:
        deg = key_degree(k)
        if deg > max_degree:
            raise ResourceLimit(f"tree degree {deg} exceeds the configured cap {max_degree}")
        groups.setdefault((deg, key_labels(k)), {})[k] = coeff
    return groups


def tree_reduce(c: TreeCombination, max_degree: int = DEFAULT_MAX_DEGREE) -> dict[int, dict[TreeKey, Fraction]]:
    """Coordinates of ``c`` on the quotient basis trees, grouped by degree.

    Degrees whose coordinates all vanish are omitted, so a combination in
    the relation span reduces to ``{}``.
    """
    out: dict = {}
    for (deg, labels), terms in _blocks(c, max_degree).items():
        block = tree_block(deg, labels)
        vec = [terms.get(k, Fraction(0)) for k in block.trees]
        nf = block.quotient.normal_form(vec)
        coords = {block.trees[i]: x for i, x in enumerate(nf) if x != 0}
        if coords:
            out.setdefault(deg, {}).update(coords)
    return out


def normalize(c: TreeCombination, max_degree: int = DEFAULT_MAX_DEGREE) -> TreeCombination:
    """The representative of ``c`` supported on quotient basis trees."""
    acc: dict = {}
    for coords in tree_reduce(c, max_degree).values():
        acc.update(coords)
    return TreeCombination.from_dict(c.genus, acc)


def glue(key1: TreeKey, leg1: int, key2: TreeKey, leg2: int):
    """Join leaf ``leg1`` of one tree to leaf ``leg2`` of another into an
    internal edge; returns (vertices, edges, legs) with legs labeled by
    basis index."""
    v1, e1, l1 = graphs.decode(key1)
    v2, e2, l2 = graphs.decode(key2)
    shift = 1 + max([d for v in v1 for d in v] + [d for d, _ in l1])
    v2 = tuple(tuple(d + shift for d in v) for v in v2)
    e2 = tuple((a + shift, b + shift) for a, b in e2)
    l2 = tuple((d + shift, lbl) for d, lbl in l2)
    d1 = l1[leg1][0]
    d2 = l2[leg2][0]
    partner = {}
    for a, b in e1 + e2:
        partner[a], partner[b] = b, a
    p1, p2 = partner[d1], partner[d2]
    edges = tuple(e for e in e1 + e2 if d1 not in e and d2 not in e) + ((p1, p2),)
    legs = tuple(x for i, x in enumerate(l1) if i != leg1) + tuple(x for i, x in enumerate(l2) if i != leg2)
    return v1 + v2, edges, legs


def tree_bracket(t1: TreeCombination, t2: TreeCombination, max_degree: int = DEFAULT_MAX_DEGREE) -> TreeCombination:
    """Sum over leaf pairs of omega(label1, label2) times the glued tree,
    normalized modulo AS/IHX."""
    t1._check(t2)
    form = SymplecticLattice(t1.genus).form
    acc: dict = {}
    for k1, c1 in t1.terms:
        _, _, legs1 = graphs.decode(k1)
        for k2, c2 in t2.terms:
            _, _, legs2 = graphs.decode(k2)
            for i, (_, a) in enumerate(legs1):
                for j, (_, b) in enumerate(legs2):
                    w = form[a][b]
                    if not w:
                        continue
                    vs, es, lg = glue(k1, i, k2, j)
                    key, sign, _ = _tree_key(vs, es, lg)
                    acc[key] = acc.get(key, 0) + c1 * c2 * w * sign
    return normalize(TreeCombination.from_dict(t1.genus, acc), max_degree)


def basis_trees(genus: int, degree: int) -> list[TreeCombination]:
    """One combination per canonical basis-labeled tree of ``degree``."""
    out = []
    seen = set()
    for labels in product(range(2 * genus), repeat=degree + 2):
        ms = tuple(sorted(labels))
        if ms in seen:
            continue
        seen.add(ms)
        for k in _block_keys(degree, ms):
            if not _tree_key(*graphs.decode(k))[2]:
                out.append(TreeCombination(genus, ((k, Fraction(1)),)))
    return out
