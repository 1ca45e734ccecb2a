"""Property suites run by ``qtopo verify``.

Each check returns a :class:`PropertyResult`; a failing check carries a
printable counterexample.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from . import habiro, jacobi, poly
from .cyclotomic import cyclotomic_polynomial
from .homcob import (HomologyCobordism, compose, identity_cylinder, is_homology_cobordism,
                     is_homology_cylinder, is_torelli, mapping_cylinder, word_class)
from .smith import matmul, smith_normal_form
from .symplectic import PolynomialObservable, basis_trees, commutator, moyal_product, poisson_bracket, tree_bracket


@dataclass
class PropertyResult:
    name: str
    ok: bool
    detail: str = ""


def _check(name: str, fn: Callable[[], str | None]) -> PropertyResult:
    detail = fn()
    return PropertyResult(name, detail is None, detail or "")


def random_poly(rng: random.Random, deg: int, bound: int = 5) -> tuple[int, ...]:
    return poly.trim(rng.randint(-bound, bound) for _ in range(deg + 1))


def random_habiro(rng: random.Random, level: int) -> habiro.HabiroElement:
    fs = [random_poly(rng, rng.randint(0, 6)) for _ in range(rng.randint(1, level + 1))]
    return habiro.from_factorial_series(fs, level)


# -- suites ----------------------------------------------------------------

def habiro_hom(pairs: int = 200, level: int = 5, seed: int = 0) -> list[PropertyResult]:
    rng = random.Random(seed)
    elems = [(random_habiro(rng, level), random_habiro(rng, level)) for _ in range(pairs)]

    def ev_hom():
        for a, b in elems:
            for n in range(1, level + 2):
                ea, eb = habiro.evaluate_at_root(a, n), habiro.evaluate_at_root(b, n)
                if habiro.evaluate_at_root(a * b, n) != ea * eb:
                    return f"ev_{n} not multiplicative on {a} , {b}"
                if habiro.evaluate_at_root(a + b, n) != ea + eb:
                    return f"ev_{n} not additive on {a} , {b}"
        return None

    def taylor_hom():
        for a, b in elems:
            ta, tb = habiro.taylor_at_one(a), habiro.taylor_at_one(b)
            if habiro.taylor_at_one(a * b) != ta * tb:
                return f"T1 not multiplicative on {a} , {b}"
            if habiro.taylor_at_one(a + b) != ta + tb:
                return f"T1 not additive on {a} , {b}"
        return None

    def pochhammer_vanishing():
        for k in range(level + 2):
            e = habiro.HabiroElement.from_poly(poly.pochhammer(k), level)
            for n in range(1, k + 1):
                if not habiro.evaluate_at_root(e, n).is_zero():
                    return f"(q;q)_{k} nonzero at order {n}"
            t = habiro.taylor_at_one(e).coefficients
            if any(t[:k]):
                return f"T1((q;q)_{k}) = {t}"
        return None

    def cyclotomic_product():
        for n in range(1, 25):
            prod = (1,)
            for d in range(1, n + 1):
                if n % d == 0:
                    prod = poly.mul(prod, cyclotomic_polynomial(d).coefficients)
            if prod != poly.sub(poly.monomial(n), (1,)):
                return f"product over divisors of {n} is {prod}"
        return None

    return [
        _check("ev is a ring homomorphism", ev_hom),
        _check("T1 is a ring homomorphism mod h^(N+1)", taylor_hom),
        _check("(q;q)_k vanishes at orders <= k and in T1 below h^k", pochhammer_vanishing),
        _check("product of cyclotomic polynomials over divisors is q^n - 1", cyclotomic_product),
    ]


def weights_welldefined(max_degree: int = 3, pairs: int = 100, seed: int = 0) -> list[PropertyResult]:
    datas = (jacobi.EPSILON, jacobi.SL2)

    def relations_vanish():
        for deg in range(max_degree + 1):
            for rel in jacobi.generate_relations(deg, max_degree).relations:
                for w in datas:
                    v = sum((c * jacobi.weight_system(w, d) for c, d in rel.terms), Fraction(0))
                    if v:
                        return f"{rel.kind} relation in degree {deg} has {w.name} weight {v}"
        return None

    def theta_six():
        v = jacobi.weight_system(jacobi.EPSILON, jacobi.THETA)
        return None if v == 6 else f"W(theta) = {v}"

    def multiplicative():
        rng = random.Random(seed)
        pool = [k for deg in range(1, max_degree + 1) for k in jacobi.enumerate_diagrams(deg)]
        for _ in range(pairs):
            ka, kb = rng.choice(pool), rng.choice(pool)
            a, b = jacobi.JacobiDiagram.from_key(ka), jacobi.JacobiDiagram.from_key(kb)
            for w in datas:
                lhs = jacobi.weight_system(w, a.disjoint_union(b))
                rhs = jacobi.weight_system(w, a) * jacobi.weight_system(w, b)
                if lhs != rhs:
                    return f"{w.name}: W(a u b) = {lhs} != {rhs}"
        return None

    return [
        _check("AS and IHX relations have weight 0 (epsilon, sl2)", relations_vanish),
        _check("W_epsilon(theta) = 6", theta_six),
        _check("weight system is multiplicative", multiplicative),
    ]


def hopf(max_degree: int = 3) -> list[PropertyResult]:
    def elements():
        for deg in range(max_degree + 1):
            for k in jacobi.enumerate_diagrams(deg):
                yield jacobi.DiagramCombination(max_degree, ((k, Fraction(1)),))

    def coassociative():
        for c in elements():
            d = jacobi.coproduct(c)
            left: dict = {}
            right: dict = {}
            for (a, b), x in d.items():
                for (a1, a2), y in jacobi.coproduct(jacobi.DiagramCombination(max_degree, ((a, Fraction(1)),))).items():
                    key = (a1, a2, b)
                    left[key] = left.get(key, 0) + x * y
                for (b1, b2), y in jacobi.coproduct(jacobi.DiagramCombination(max_degree, ((b, Fraction(1)),))).items():
                    key = (a, b1, b2)
                    right[key] = right.get(key, 0) + x * y
            if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
                return f"coassociativity fails on {c.terms}"
        return None

    def counit_law():
        for c in elements():
            (k, _), = c.terms
            d = jacobi.coproduct(c)
            lhs = {b: x for (a, b), x in d.items() if a == ()}
            rhs = {a: x for (a, b), x in d.items() if b == ()}
            if lhs != {k: 1} or rhs != {k: 1}:
                return f"counit law fails on {k}"
        return None

    def group_like():
        theta = jacobi.DiagramCombination.of(jacobi.THETA, level=max_degree)
        s = jacobi.exp_combination(theta)
        if not jacobi.is_group_like(s, max_degree, max_degree):
            return "exp(theta) is not group-like"
        t = jacobi.DiagramCombination.one(max_degree) + theta
        if jacobi.is_group_like(t, max_degree, max_degree):
            return "1 + theta reported group-like"
        return None

    return [
        _check("coproduct is coassociative", coassociative),
        _check("counit law", counit_law),
        _check("exp(theta) group-like, 1 + theta not", group_like),
    ]


def random_observable(rng: random.Random, genus: int, order: int, max_deg: int = 4, terms: int = 4):
    acc = {}
    for _ in range(terms):
        deg = rng.randint(0, max_deg)
        exps = [0] * (2 * genus)
        for _ in range(deg):
            exps[rng.randrange(2 * genus)] += 1
        acc[(0, tuple(exps))] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return PolynomialObservable.from_dict(genus, order, acc)


def symplectic(triples: int = 100, order: int = 4, seed: int = 0) -> list[PropertyResult]:
    def jacobi_identity():
        for g in (1, 2):
            trees = basis_trees(g, 0) + basis_trees(g, 1)
            for x, y, z in product(trees, repeat=3):
                s = (tree_bracket(tree_bracket(x, y), z) + tree_bracket(tree_bracket(y, z), x)
                     + tree_bracket(tree_bracket(z, x), y))
                if not s.is_zero():
                    return f"Jacobi identity fails for genus {g}: {x.terms} {y.terms} {z.terms}"
        return None

    def antisymmetry():
        for g in (1, 2):
            trees = basis_trees(g, 0) + basis_trees(g, 1)
            for x, y in product(trees, repeat=2):
                if not (tree_bracket(x, y) + tree_bracket(y, x)).is_zero():
                    return f"antisymmetry fails: {x.terms} {y.terms}"
        return None

    rng = random.Random(seed)

    def associativity():
        for _ in range(triples):
            g = rng.choice((1, 2))
            p, q, r = (random_observable(rng, g, order) for _ in range(3))
            if moyal_product(moyal_product(p, q), r) != moyal_product(p, moyal_product(q, r)):
                return f"star product not associative on {p} {q} {r}"
        return None

    def commutator_poisson():
        for _ in range(triples):
            g = rng.choice((1, 2))
            p, q = random_observable(rng, g, order), random_observable(rng, g, order)
            lhs = commutator(p, q, 2).divide_by_t().truncate(1)
            rhs = poisson_bracket(p, q).truncate(1)
            if lhs != rhs:
                return f"commutator/t != Poisson bracket on {p} {q}"
        return None

    return [
        _check("tree bracket Jacobi identity (struts, degree 1, g <= 2)", jacobi_identity),
        _check("tree bracket antisymmetry", antisymmetry),
        _check("Moyal product associative mod t^K", associativity),
        _check("star commutator = t * Poisson bracket mod t^2", commutator_poisson),
    ]


def random_word(rng: random.Random, genus: int, length: int) -> list[str]:
    names = [f"{x}{i}" for x in "ab" for i in range(1, genus + 1)]
    out = []
    for _ in range(length):
        c = rng.choice(names)
        if rng.random() < 0.3:
            c = c + "+" + rng.choice(names) if genus > 0 else c
        out.append(("-" if rng.random() < 0.5 else "") + c)
    return out


def random_cobordism(rng: random.Random, genus: int) -> HomologyCobordism:
    kind = rng.random()
    if kind < 0.4:
        return mapping_cylinder(word_class(genus, random_word(rng, genus, rng.randint(0, 4))))
    n = 2 * genus + rng.randint(0, 2)
    r = rng.randint(0, 2)
    rel = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)]
    mp = [[rng.randint(-2, 2) for _ in range(2 * genus)] for _ in range(n)]
    mm = [[rng.randint(-2, 2) for _ in range(2 * genus)] for _ in range(n)]
    return HomologyCobordism.build(genus, rel, mp, mm)


def cobordism(triples: int = 100, seed: int = 0) -> list[PropertyResult]:
    rng = random.Random(seed)

    def monoid_laws():
        for _ in range(triples):
            g = rng.randint(1, 3)
            a, b, c = (random_cobordism(rng, g) for _ in range(3))
            e = identity_cylinder(g)
            if not compose(e, a).is_equivalent(a) or not compose(a, e).is_equivalent(a):
                return f"unit law fails on {a}"
            if not compose(compose(a, b), c).is_equivalent(compose(a, compose(b, c))):
                return f"associativity fails on {a} {b} {c}"
        return None

    def cylinder_compat():
        for _ in range(triples):
            g = rng.randint(1, 3)
            f = word_class(g, random_word(rng, g, rng.randint(0, 6)))
            h = word_class(g, random_word(rng, g, rng.randint(0, 6)))
            if not compose(mapping_cylinder(f), mapping_cylinder(h)).is_equivalent(mapping_cylinder(f * h)):
                return f"C(f) o C(h) != C(f h) for {f.matrix} {h.matrix}"
        return None

    def closure():
        for _ in range(triples):
            g = rng.randint(1, 3)
            a, b = random_homology_cobordism(rng, g), random_homology_cobordism(rng, g)
            if not (is_homology_cobordism(a) and is_homology_cobordism(b)):
                return "generator produced a non-homology-cobordism"
            if not is_homology_cobordism(compose(a, b)):
                return f"homology cobordisms not closed under composition: {a} {b}"
            c, d = random_homology_cobordism(rng, g, cylinder=True), random_homology_cobordism(rng, g, cylinder=True)
            if not (is_homology_cylinder(c) and is_homology_cylinder(d)):
                return "generator produced a non-homology-cylinder"
            if not is_homology_cylinder(compose(c, d)):
                return f"homology cylinders not closed under composition: {c} {d}"
        return None

    def torelli_inclusion():
        for _ in range(triples):
            g = rng.randint(1, 3)
            f = word_class(g, random_word(rng, g, rng.randint(0, 6)))
            for cand in (f, f * f.inverse()):
                if is_torelli(cand) and not is_homology_cylinder(mapping_cylinder(cand)):
                    return f"Torelli class {cand.matrix} gives no homology cylinder"
        return None

    return [
        _check("unit and associativity laws", monoid_laws),
        _check("mapping cylinders compose as matrix products", cylinder_compat),
        _check("homology cobordisms and cylinders closed under composition", closure),
        _check("Torelli implies homology cylinder", torelli_inclusion),
    ]


def _unimodular(rng: random.Random, n: int) -> list[list[int]]:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            k = rng.randint(-2, 2)
            m[i] = [x + k * y for x, y in zip(m[i], m[j])]
    return m


def random_homology_cobordism(rng: random.Random, genus: int, cylinder: bool = False) -> HomologyCobordism:
    """V = Z^(2g) presented with ``extra`` redundant generators y_j tied to the
    surface classes by relations y_j = sum_i r_ij x_i; markings differ from
    unimodular images by random multiples of relation columns."""
    g2, extra = 2 * genus, rng.randint(0, 2)
    n = g2 + extra
    rel = [[0] * extra for _ in range(n)]
    for j in range(extra):
        rel[g2 + j][j] = 1
        for i in range(g2):
            rel[i][j] = -rng.randint(-2, 2)
    bottom = _unimodular(rng, g2)
    top = bottom if cylinder else _unimodular(rng, g2)

    def mark(u):
        m = [list(row) for row in u] + [[0] * g2 for _ in range(extra)]
        for j in range(extra):
            for x in range(g2):
                k = rng.randint(-1, 1)
                for i in range(n):
                    m[i][x] += k * rel[i][j]
        return m

    return HomologyCobordism.build(genus, rel, mark(top), mark(bottom))


def smith(count: int = 200, seed: int = 0) -> list[PropertyResult]:
    rng = random.Random(seed)

    def contract():
        for _ in range(count):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            sf = smith_normal_form(a)
            if matmul(matmul(sf.left, a), sf.right) != sf.diagonal_matrix():
                return f"left*A*right != D for {a}"
            d = [x for x in sf.diagonal]
            for x, y in zip(d, d[1:]):
                if x == 0 and y != 0 or x and y % x:
                    return f"divisibility chain broken: {d}"
            from .smith import determinant
            if abs(determinant(sf.left)) != 1 or abs(determinant(sf.right)) != 1:
                return f"transforms not unimodular for {a}"
        return None

    return [_check("Smith form contract", contract)]


def diagram_square(order: int = 5, seed: int = 0, samples: int = 20) -> list[PropertyResult]:
    """Paired inputs: a Habiro element f and the combination
    sum_k t_k / W(theta^k) theta^k built from the integers t_k = T1(f)_k."""
    rng = random.Random(seed)
    w = jacobi.SL2

    def square():
        for _ in range(samples):
            f = random_habiro(rng, order)
            series = to_h_series(habiro.taylor_at_one(f))
            c = matching_combination(series.coefficients, w, order)
            leg = jacobi.weight_series(w, c, order + 1)
            if leg.coefficients != series.coefficients:
                return f"{f}: {series.coefficients} != {leg.coefficients}"
            if not leg.is_integral():
                return f"non-integral weight series {leg.coefficients}"
        return None

    def substitution():
        # h = 1 - q carries q^j to (1 - h)^j
        for j in range(order + 1):
            e = habiro.HabiroElement.from_poly(poly.monomial(j), order)
            s = habiro.taylor_at_one(e).coefficients
            expected = poly.power((1, -1), j) + (0,) * (order + 1)
            if tuple(s) != tuple(expected[: order + 1]):
                return f"T1(q^{j}) = {s}"
        return None

    return [
        _check("T1 then h = 1 - q matches the weight-series leg", square),
        _check("T1(q^j) = (1 - h)^j", substitution),
    ]


def to_h_series(s: habiro.OneMinusQSeries) -> jacobi.HSeries:
    """Read a series in (1 - q) as a series in h = 1 - q."""
    return jacobi.HSeries(s.truncation, tuple(Fraction(c) for c in s.coefficients))


def matching_combination(coefficients, w: jacobi.WeightData, level: int) -> jacobi.DiagramCombination:
    pairs = []
    for k, t in enumerate(coefficients):
        if t:
            d = jacobi.theta_power(k)
            pairs.append((Fraction(t) / jacobi.weight_system(w, d), d))
    return jacobi.DiagramCombination.from_diagrams(pairs, level)


SUITES: dict[str, Callable[[], list[PropertyResult]]] = {
    "habiro-hom": habiro_hom,
    "weights-welldefined": weights_welldefined,
    "hopf": hopf,
    "symplectic": symplectic,
    "cobordism": cobordism,
    "smith": smith,
    "diagram-square": diagram_square,
}


def run_suite(name: str) -> list[PropertyResult]:
    if name == "all":
        return [r for fn in SUITES.values() for r in fn()]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
