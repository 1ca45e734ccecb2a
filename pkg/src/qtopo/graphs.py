"""Canonical forms for uni-trivalent graphs with oriented trivalent vertices.

A graph is given by half-edges ("darts", arbitrary hashable ids):

* ``vertices`` -- triples of darts; the tuple order is the cyclic
  orientation of the vertex,
* ``legs`` -- ``(dart, label)`` pairs, univalent vertices carrying a
  sortable label,
* ``edges`` -- pairs of darts, a perfect matching of all darts.

The canonical key forgets vertex orientations.  Orientation is recovered
as a sign relative to the orientation encoded by the key, which is how
the AS relation (reversal at one vertex negates) becomes bookkeeping.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .errors import InvalidArgument

# component code: root descriptor, then one entry per dart in label order;
# a descriptor is (0,) for a trivalent vertex, (1, label) for a leg
ComponentCode = tuple
GraphKey = tuple


class Structure:
    """Validated adjacency data for one graph."""

    def __init__(self, vertices: Sequence[Sequence[Hashable]], edges: Iterable[Sequence[Hashable]],
                 legs: Sequence[tuple[Hashable, Hashable]] = ()):
        self.nodes: list[tuple] = []  # ("v", darts) or ("l", (dart,), label)
        self.owner: dict = {}
        for i, vx in enumerate(vertices):
            vx = tuple(vx)
            if len(vx) != 3:
                raise InvalidArgument(f"vertex {i} has {len(vx)} half-edges, expected 3")
            self.nodes.append(("v", vx, None))
            for d in vx:
                if d in self.owner:
                    raise InvalidArgument(f"half-edge {d!r} used twice")
                self.owner[d] = len(self.nodes) - 1
        for d, label in legs:
            if d in self.owner:
                raise InvalidArgument(f"half-edge {d!r} used twice")
            self.nodes.append(("l", (d,), label))
            self.owner[d] = len(self.nodes) - 1
        self.partner: dict = {}
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise InvalidArgument(f"edge {e!r} must join two half-edges")
            a, b = e
            for d in (a, b):
                if d not in self.owner:
                    raise InvalidArgument(f"edge uses unknown half-edge {d!r}")
                if d in self.partner:
                    raise InvalidArgument(f"half-edge {d!r} lies on two edges")
            if a == b:
                raise InvalidArgument(f"edge {e!r} joins a half-edge to itself")
            self.partner[a] = b
            self.partner[b] = a
        missing = [d for d in self.owner if d not in self.partner]
        if missing:
            raise InvalidArgument(f"half-edges without an edge: {missing!r}")

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for start in range(len(self.nodes)):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                n = stack.pop()
                comp.append(n)
                for d in self.nodes[n][1]:
                    m = self.owner[self.partner[d]]
                    if m not in seen:
                        seen.add(m)
                        stack.append(m)
            comps.append(sorted(comp))
        return comps

    def canonical_component(self, comp: Sequence[int]) -> tuple[ComponentCode, int, bool]:
        """Lexicographically least breadth-first code of one component.

        The code lists, for each dart in label order, either ``(0, label)``
        of an already labeled partner or ``(1, descriptor)`` when the
        partner's node is met for the first time.  Branching happens at
        each new trivalent vertex (two orders of its remaining darts);
        branches whose prefix already exceeds the best code are cut.
        """
        best: list = [None]
        signs: set[int] = set()

        def visit(entry, labels, order, sign, flip):
            kind, darts, label = self.nodes[self.owner[entry]]
            if kind == "l":
                seq = (entry,)
            else:
                i = darts.index(entry)
                x, y = darts[(i + 1) % 3], darts[(i + 2) % 3]
                seq = (entry, y, x) if flip else (entry, x, y)
                if flip:
                    sign = -sign
            for d in seq:
                labels[d] = len(order)
                order.append(d)
            return sign

        def descriptor(d):
            kind, _, label = self.nodes[self.owner[d]]
            return (0,) if kind == "v" else (1, label)

        def worse(code) -> bool:
            b = best[0]
            return b is not None and tuple(code) > b[: len(code)]

        def run(k, labels, order, code, sign):
            while k < len(order):
                p = self.partner[order[k]]
                if p in labels:
                    code.append((0, labels[p]))
                    if worse(code):
                        return
                    k += 1
                    continue
                code.append((1, descriptor(p)))
                if worse(code):
                    return
                if self.nodes[self.owner[p]][0] == "l":
                    sign = visit(p, labels, order, sign, False)
                    k += 1
                    continue
                for flip in (False, True):
                    lab, od = dict(labels), list(order)
                    s2 = visit(p, lab, od, sign, flip)
                    run(k + 1, lab, od, list(code), s2)
                return
            final = tuple(code)
            if best[0] is None or final < best[0]:
                best[0] = final
                signs.clear()
                signs.add(sign)
            elif final == best[0]:
                signs.add(sign)

        for start in self._start_darts(comp):
            root = [descriptor(start)]
            if self.nodes[self.owner[start]][0] == "l":
                labels, order = {}, []
                visit(start, labels, order, 1, False)
                run(0, labels, order, list(root), 1)
            else:
                for flip in (False, True):
                    labels, order = {}, []
                    s = visit(start, labels, order, 1, flip)
                    run(0, labels, order, list(root), s)
        # an orientation-reversing automorphism makes both signs reachable
        self_negating = len(signs) == 2
        return best[0], (1 if self_negating else next(iter(signs))), self_negating

    def _start_darts(self, comp: Sequence[int]) -> list:
        """Darts in the smallest class of an isomorphism-invariant refinement."""
        darts = [d for n in comp for d in self.nodes[n][1]]

        def base(d):
            kind, ds, label = self.nodes[self.owner[d]]
            p = self.partner[d]
            if kind == "l":
                return (0, (label,))
            return (1, (self.owner[p] == self.owner[d], self.nodes[self.owner[p]][0] == "l"))

        color = {d: base(d) for d in darts}
        for _ in range(4):
            new = {}
            for d in darts:
                kind, ds, _ = self.nodes[self.owner[d]]
                siblings = tuple(sorted(color[s] for s in ds if s != d))
                new[d] = (color[d], color[self.partner[d]], siblings)
            # compress to ranks so colors stay small and comparable
            ranks = {c: i for i, c in enumerate(sorted(set(new.values())))}
            new = {d: ranks[c] for d, c in new.items()}
            if len(set(new.values())) == len(set(color.values())):
                color = new
                break
            color = new
        low = min(color.values())
        return [d for d in darts if color[d] == low]

    def canonical(self) -> tuple[GraphKey, int, bool]:
        codes = []
        sign = 1
        self_negating = False
        for comp in self.components():
            code, s, neg = self.canonical_component(comp)
            codes.append(code)
            sign *= s
            self_negating = self_negating or neg
        return tuple(sorted(codes)), sign, self_negating


def decode(key: GraphKey):
    """Vertices, edges and legs of the canonically oriented graph with ``key``.

    Dart ids are consecutive integers; vertices carry the orientation the
    key encodes.
    """
    vertices, edges, legs = [], [], []
    offset = 0
    for code in key:
        count = 0

        def new_node(desc):
            nonlocal count
            entry = offset + count
            if desc[0] == 0:
                vertices.append((entry, entry + 1, entry + 2))
                count += 3
            else:
                legs.append((entry, desc[1]))
                count += 1
            return entry

        new_node(code[0])
        for k, (tag, val) in enumerate(code[1:]):
            if tag == 0:
                if offset + k < offset + val:
                    edges.append((offset + k, offset + val))
            else:
                edges.append((offset + k, new_node(val)))
        offset += count
    return tuple(vertices), tuple(edges), tuple(legs)


def trivalent_count(key: GraphKey) -> int:
    n = 0
    for code in key:
        n += code[0] == (0,)
        n += sum(1 for tag, val in code[1:] if tag == 1 and val == (0,))
    return n
