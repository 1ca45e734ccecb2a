import itertools
import random
from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qtopo.errors import InvalidArgument
from qtopo.symplectic import (PolynomialObservable, SymplecticLattice, TreeCombination, commutator,
                              moyal_product, poisson_bracket, tree_bracket)
from qtopo.symplectic.trees import basis_trees, from_shape, normalize, strut, tree_reduce
from qtopo.verify import random_observable

A1, A2, B1, B2 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


# -- lattice ----------------------------------------------------------------

@pytest.mark.parametrize("x, y, value", [("a1", "b1", 1), ("a1", "a2", 0), ("b1", "a1", -1), ("b2", "b2", 0)])
def test_omega_on_basis(x, y, value):
    lat = SymplecticLattice(2)
    assert lat.omega(lat.basis_vector(x), lat.basis_vector(y)) == value


def test_omega_length_mismatch():
    with pytest.raises(InvalidArgument):
        SymplecticLattice(1).omega((1, 0), (1, 0, 0, 0))


# -- trees --------------------------------------------------------------------

def one(tree):
    return TreeCombination.of(tree)


def test_bracket_of_struts_examples():
    g1 = lambda x, y: one(strut(x, y, 1))
    a, b = (1, 0), (0, 1)
    assert tree_bracket(g1(a, a), g1(b, b)) == normalize(g1(a, b).scale(4))
    lhs = tree_bracket(one(strut(A1, A2, 2)), one(strut(B2, B2, 2)))
    assert lhs == normalize(one(strut(A1, B2, 2)).scale(2))


def test_rotation_flip_negates():
    t = from_shape((0, 1, 2), [A1, B1, A2], 2)
    red = tree_reduce(one(t))
    flipped = tree_reduce(one(t.reverse_at(0)))
    assert flipped == {d: {k: -c for k, c in part.items()} for d, part in red.items()}


def test_ihx_on_degree_two_trees():
    rng = random.Random(3)
    basis = [A1, B1, A2, B2]
    for _ in range(20):
        labels = [rng.choice(basis) for _ in range(4)]
        total = TreeCombination(2)
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            total = total + one(from_shape(((i, j), k, 3), labels, 2))
        assert tree_reduce(total) == {}


def test_strut_is_multilinear():
    s = one(strut((1, 1), (1, 0), 1))
    expected = one(strut((1, 0), (1, 0), 1)) + one(strut((0, 1), (1, 0), 1))
    assert normalize(s) == normalize(expected)


def test_strut_symmetric():
    assert normalize(one(strut(A1, B2, 2))) == normalize(one(strut(B2, A1, 2)))


def _random_tree_comb(rng, genus):
    pool = basis_trees(genus, 0) + basis_trees(genus, 1)
    total = TreeCombination(genus)
    for _ in range(rng.randint(1, 3)):
        total = total + rng.choice(pool).scale(rng.randint(-3, 3))
    return total


def test_bracket_antisymmetric_and_self_bracket_zero():
    rng = random.Random(8)
    for _ in range(15):
        s, t = _random_tree_comb(rng, 2), _random_tree_comb(rng, 2)
        assert tree_bracket(s, s).is_zero()
        assert tree_bracket(s, t) == tree_bracket(t, s).scale(-1)


@pytest.mark.parametrize("genus", [1, 2])
def test_jacobi_identity_on_small_basis_trees(genus):
    pool = basis_trees(genus, 0) + basis_trees(genus, 1)
    rng = random.Random(genus)
    triples = list(itertools.combinations(pool, 3))
    for x, y, z in rng.sample(triples, min(40, len(triples))):
        total = (tree_bracket(tree_bracket(x, y), z) + tree_bracket(tree_bracket(y, z), x)
                 + tree_bracket(tree_bracket(z, x), y))
        assert normalize(total).is_zero()


# -- Moyal: independent sympy implementation ---------------------------------

t = sympy.Symbol("t")


def to_sympy(p: PolynomialObservable):
    lat = SymplecticLattice(p.genus)
    xs = [sympy.Symbol(lat.basis_name(i)) for i in range(lat.rank)]
    expr = 0
    for (te, exps), c in p.terms:
        expr += sympy.Rational(c.numerator, c.denominator) * t**te * sympy.prod(
            [x**e for x, e in zip(xs, exps)])
    return sympy.expand(expr), xs, lat


def sympy_star(p, q, order):
    f, xs, lat = to_sympy(p)
    g, _, _ = to_sympy(q)
    n_vars = len(xs)
    P = [[lat.omega(lat.basis_vector(i), lat.basis_vector(j)) for j in range(n_vars)] for i in range(n_vars)]
    total = 0
    for n in range(order):
        if n == 0:
            total += f * g
            continue
        acc = 0
        for idx in itertools.product(range(n_vars), repeat=n):
            for jdx in itertools.product(range(n_vars), repeat=n):
                coef = sympy.prod([P[i][j] for i, j in zip(idx, jdx)])
                if coef:
                    acc += coef * sympy.diff(f, *[xs[i] for i in idx]) * sympy.diff(g, *[xs[j] for j in jdx])
        total += (t / 2) ** n / factorial(n) * acc
    return sympy.expand(sympy.series(sympy.expand(total), t, 0, order).removeO())


def var(name, genus=1, order=4):
    return PolynomialObservable.variable(genus, order, name)


def test_moyal_examples():
    x, y = var("a1"), var("b1")
    assert moyal_product(PolynomialObservable.constant(1, 4), x * y) == x * y
    assert commutator(x, y) == PolynomialObservable.t(1, 4)
    got = moyal_product(x * x, y * y)
    expected = x * x * y * y + (x * y).scale(2) * PolynomialObservable.t(1, 4) \
        + PolynomialObservable.t(1, 4) * PolynomialObservable.t(1, 4).scale(Fraction(1, 2))
    assert got == expected


def test_poisson_examples():
    x, y = var("a1"), var("b1")
    assert poisson_bracket(x, y) == PolynomialObservable.constant(1, 4)
    assert poisson_bracket(x * y, x) == x.scale(-1)
    p = x * x * y + y
    assert poisson_bracket(p, p).is_zero()


def test_moyal_against_sympy_oracle():
    rng = random.Random(21)
    for _ in range(12):
        genus = rng.choice([1, 2])
        p = random_observable(rng, genus, 4, max_deg=3, terms=3)
        q = random_observable(rng, genus, 4, max_deg=3, terms=3)
        got, _, _ = to_sympy(moyal_product(p, q))
        assert sympy.expand(got - sympy_star(p, q, 4)) == 0


def test_moyal_associative():
    rng = random.Random(4)
    for _ in range(15):
        a, b, c = (random_observable(rng, 1, 4) for _ in range(3))
        assert moyal_product(moyal_product(a, b), c) == moyal_product(a, moyal_product(b, c))


def test_commutator_leading_term_is_poisson():
    rng = random.Random(6)
    for _ in range(15):
        a, b = random_observable(rng, 2, 4), random_observable(rng, 2, 4)
        lead = commutator(a, b, 2)
        want = (PolynomialObservable.t(2, 2) * poisson_bracket(a, b).truncate(2)).truncate(2)
        assert lead == want


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_t_order_truncation(seed):
    rng = random.Random(seed)
    a, b = random_observable(rng, 1, 4), random_observable(rng, 1, 4)
    assert moyal_product(a, b, 2) == moyal_product(a, b).truncate(2)


def test_genus_mismatch():
    with pytest.raises(InvalidArgument):
        moyal_product(var("a1", 1), var("a1", 2))
