import itertools
import random
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from qtopo.smith import determinant, hermite_rows, integer_kernel, matmul, smith_normal_form


def minors_gcds(a):
    """Determinantal divisors d_k = gcd of all k x k minors."""
    m = sympy.Matrix(a)
    out = []
    for k in range(1, min(m.shape) + 1):
        g = 0
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                g = gcd(g, int(m.extract(list(rows), list(cols)).det()))
        out.append(g)
    return out


def invariant_factors(a):
    ds = minors_gcds(a)
    facs, prev = [], 1
    for d in ds:
        if d == 0:
            facs.append(0)
            continue
        facs.append(d // prev)
        prev = d
    return facs


def check_contract(a):
    s = smith_normal_form(a)
    assert [list(r) for r in matmul(matmul(s.left, a), s.right)] == [list(r) for r in s.diagonal_matrix()]
    assert abs(determinant(s.left)) == 1 and abs(determinant(s.right)) == 1
    d = list(s.diagonal)
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[: len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    return s


@pytest.mark.parametrize("a, diag", [
    ([[2, 0], [0, 3]], (1, 6)),
    ([[2, 4], [6, 8]], (2, 4)),      # frozen regression value
    ([[0, 0], [0, 0]], (0, 0)),
])
def test_examples(a, diag):
    assert check_contract(a).diagonal == diag


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=120, deadline=None)
@given(matrices)
def test_against_determinantal_divisors(a):
    s = check_contract(a)
    assert list(s.diagonal) == invariant_factors(a)


def test_against_sympy():
    rng = random.Random(17)
    for _ in range(40):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        ref = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
        want = sorted((abs(int(ref[i, i])) for i in range(min(r, c))), key=lambda x: (x == 0, x))
        assert list(smith_normal_form(a).diagonal) == want


def test_empty_shapes():
    s = smith_normal_form([], ncols=3)
    assert s.diagonal == () and s.rank == 0


def test_integer_kernel():
    a = [[1, 2, 3], [2, 4, 6]]
    ker = integer_kernel(a, 3)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)
    assert sympy.Matrix(ker).rank() == 2


def test_hermite_rows_is_canonical():
    rows = [[2, 4, 6], [1, 1, 1]]
    shuffled = [[1, 1, 1], [3, 5, 7]]      # same row lattice
    assert hermite_rows(rows, 3) == hermite_rows(shuffled, 3)
