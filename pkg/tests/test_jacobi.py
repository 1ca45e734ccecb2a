import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qtopo import jacobi
from qtopo.errors import InvalidArgument, ResourceLimit
from qtopo.jacobi import (EMPTY, EPSILON, SL2, THETA, DiagramCombination, JacobiDiagram, coproduct,
                          counit, diagram_mul, enumerate_diagrams, exp_combination, generate_relations,
                          is_group_like, key_weight, reduce, theta_power, weight_series, weight_system)


def relabel(d: JacobiDiagram, rng: random.Random) -> JacobiDiagram:
    """Same abstract diagram: shuffled half-edge names, vertex order, cyclic rotations."""
    halves = [h for v in d.vertices for h in v]
    names = dict(zip(halves, rng.sample(range(100, 100 + len(halves)), len(halves))))
    verts = []
    for v in d.vertices:
        r = rng.randrange(3)
        verts.append(tuple(names[h] for h in v[r:] + v[:r]))
    rng.shuffle(verts)
    edges = [tuple(names[h] for h in (e if rng.random() < .5 else e[::-1])) for e in d.edges]
    rng.shuffle(edges)
    return JacobiDiagram(tuple(verts), tuple(edges))


def all_diagrams(max_degree=3):
    return [JacobiDiagram.from_key(k) for deg in range(max_degree + 1) for k in enumerate_diagrams(deg)]


def test_theta_key_is_labeling_independent():
    rng = random.Random(0)
    key, sign, _ = THETA.key()
    for _ in range(30):
        k2, s2, _ = relabel(THETA, rng).key()
        assert k2 == key


def test_reversing_one_vertex_flips_sign():
    key, sign, _ = THETA.key()
    k2, s2, _ = THETA.reverse_at(0).key()
    assert k2 == key and s2 == -sign


def test_component_swap_keeps_sign():
    a = THETA.disjoint_union(THETA)
    b = relabel(THETA, random.Random(4)).disjoint_union(THETA)
    assert a.key()[:2] == b.key()[:2]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_relabeling_invariance_with_consistent_sign(seed):
    rng = random.Random(seed)
    for d in rng.sample(all_diagrams(), 6):
        key, sign, selfneg = d.key()
        e = relabel(d, rng)
        flips = rng.randrange(len(e.vertices) + 1) if e.vertices else 0
        for v in range(flips):
            e = e.reverse_at(v)
        k2, s2, sn2 = e.key()
        assert k2 == key and sn2 == selfneg
        if not selfneg:
            assert s2 == sign * (-1) ** flips


def test_diagram_counts_and_quotient_dimensions():
    assert [len(enumerate_diagrams(d)) for d in range(4)] == [1, 2, 8, 31]
    # frozen regression values, cross-checked against the sympy rank below
    assert [generate_relations(d).dimension for d in range(4)] == [1, 1, 2, 3]


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_quotient_dimension_sympy_rank(degree):
    qb = generate_relations(degree)
    m = sympy.Matrix(qb.relation_matrix) if qb.relation_matrix else sympy.zeros(0, len(qb.diagrams))
    assert len(qb.diagrams) - m.rank() == qb.dimension


def test_degree_zero_has_no_relations():
    qb = generate_relations(0)
    assert qb.relations == () or len(qb.relations) == 0
    assert qb.basis_diagrams == (EMPTY.key()[0],)


def test_degree_cap():
    with pytest.raises(ResourceLimit):
        generate_relations(4)


def test_relation_rows_reduce_to_zero():
    for degree in (1, 2, 3):
        qb = generate_relations(degree)
        for rel in qb.relations:
            c = rel.combination(3)
            assert all(x == 0 for x in reduce(c).get(degree, ()))


def test_theta_class_nonzero_and_linear():
    one = reduce(DiagramCombination.of(THETA))
    two = reduce(DiagramCombination.from_diagrams([(1, THETA), (1, THETA)]))
    assert any(one[1])
    assert two[1] == tuple(2 * x for x in one[1])


def test_multiplication_examples():
    t = DiagramCombination.of(THETA)
    e = DiagramCombination.one()
    assert diagram_mul(e, t) == t
    assert diagram_mul(t, t) == DiagramCombination.of(theta_power(2))
    lhs = diagram_mul(t + e.scale(2), t)
    assert lhs == DiagramCombination.of(theta_power(2)) + t.scale(2)


def _k(d):
    return d.key()[0]


def test_coproduct_examples():
    one, th, th2 = _k(EMPTY), _k(THETA), _k(theta_power(2))
    assert coproduct(DiagramCombination.one()) == {(one, one): 1}
    assert coproduct(DiagramCombination.of(THETA)) == {(th, one): 1, (one, th): 1}
    assert coproduct(DiagramCombination.of(theta_power(2))) == {(th2, one): 1, (th, th): 2, (one, th2): 1}


def test_group_like_examples():
    t = DiagramCombination.of(THETA)
    assert is_group_like(exp_combination(t), 3)
    assert not is_group_like(DiagramCombination.one() + t, 2)
    assert is_group_like(DiagramCombination.one(), 3)
    with pytest.raises(InvalidArgument):
        is_group_like(t, 3)


def test_exp_of_connected_degree_two_is_group_like():
    connected = [k for k in enumerate_diagrams(2) if len(k) == 1]
    c = DiagramCombination.from_dict({connected[0]: Fraction(1)})
    assert is_group_like(exp_combination(c), 3)


def test_counit():
    assert counit(DiagramCombination.one().scale(5) + DiagramCombination.of(THETA)) == 5


# -- weight systems: independent sympy contraction -------------------------

def sympy_theta(structure, metric):
    n = len(metric)
    g = sympy.Matrix(metric)
    gi = g.inv()
    f = {(a, b, c): sum(structure[a][b][l] * g[l, c] for l in range(n))
         for a, b, c in itertools.product(range(n), repeat=3)}
    total = 0
    for a, b, c, x, y, z in itertools.product(range(n), repeat=6):
        total += f[a, b, c] * f[x, y, z] * gi[a, x] * gi[b, y] * gi[c, z]
    return sympy.nsimplify(total)


def test_theta_weights_against_direct_contraction():
    eps = [[[sympy.LeviCivita(a, b, c) for c in range(3)] for b in range(3)] for a in range(3)]
    assert sympy_theta(eps, sympy.eye(3).tolist()) == 6 == weight_system(EPSILON, THETA)
    assert weight_system(SL2, THETA) == sympy_theta(
        [[[SL2.structure_tensor[a][b][c] for c in range(3)] for b in range(3)] for a in range(3)],
        [list(r) for r in SL2.metric])


def test_weight_examples():
    assert weight_system(EPSILON, EMPTY) == 1
    assert weight_system(EPSILON, theta_power(2)) == 36


@pytest.mark.parametrize("w", [EPSILON, SL2], ids=["epsilon", "sl2"])
def test_relations_vanish_under_weights(w):
    for degree in (1, 2, 3):
        for rel in generate_relations(degree).relations:
            assert sum(c * weight_system(w, d) for c, d in rel.terms) == 0


@pytest.mark.parametrize("w", [EPSILON, SL2], ids=["epsilon", "sl2"])
def test_weight_is_labeling_independent(w):
    rng = random.Random(9)
    for d in all_diagrams(2):
        assert weight_system(w, relabel(d, rng)) == weight_system(w, d)
        if d.vertices:
            assert weight_system(w, d.reverse_at(0)) == -weight_system(w, d)


def test_weight_multiplicative():
    rng = random.Random(1)
    ds = all_diagrams(2)
    for _ in range(25):
        a, b = rng.choice(ds), rng.choice(ds)
        for w in (EPSILON, SL2):
            assert weight_system(w, a.disjoint_union(b)) == weight_system(w, a) * weight_system(w, b)


def test_weight_series_examples():
    one = DiagramCombination.one()
    t = DiagramCombination.of(THETA)
    assert weight_series(EPSILON, one, 3).coefficients == (1, 0, 0)
    assert weight_series(EPSILON, t, 3).coefficients == (0, 6, 0)
    assert weight_series(EPSILON, one + t, 3).coefficients == (1, 6, 0)


def test_weight_data_validation():
    with pytest.raises(InvalidArgument):
        jacobi.WeightData("bad", 2, ((((1, 0), (0, 0)), ((0, 0), (0, 0)))), ((1, 0), (0, 1)))
