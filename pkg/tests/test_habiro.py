import cmath
import random

import pytest
import sympy

from qtopo import poly
from qtopo.cyclotomic import CyclotomicInteger
from qtopo.errors import InvalidArgument, PrecisionExceeded
from qtopo.habiro import (HabiroElement, OneMinusQSeries, evaluate_at_root, from_factorial_series,
                          habiro_add, habiro_mul, lower_level, pochhammer_modulus, taylor_at_one)
from qtopo.verify import random_habiro

q, h = sympy.symbols("q h")


def as_expr(p):
    return sum(c * q**i for i, c in enumerate(p))


def pochhammer_expr(k):
    return sympy.prod([1 - q**i for i in range(1, k + 1)])


def test_modulus_is_the_pochhammer_symbol():
    for level in range(1, 7):
        m = pochhammer_modulus(level).polynomial
        assert sympy.expand(as_expr(m) - pochhammer_expr(level + 1)) == 0


def test_factorial_series_examples():
    assert from_factorial_series([(1,)], 5) == HabiroElement.one(5)
    assert from_factorial_series([(0,), (1,)], 5) == HabiroElement.from_poly((1, -1), 5)
    fs = [(1,), (0, 1), (0, 0, 1)]
    oracle = sympy.expand(1 + q * (1 - q) + q**2 * (1 - q) * (1 - q**2))
    want = tuple(int(c) for c in reversed(sympy.Poly(oracle, q).all_coeffs()))
    assert from_factorial_series(fs, 5) == HabiroElement.from_poly(want, 5)


def test_factorial_series_too_long():
    with pytest.raises(InvalidArgument):
        from_factorial_series([(1,)] * 7, 5)


def test_multiplication_examples():
    level = 5
    x = HabiroElement.from_poly((3, 0, -2, 7), level)
    assert habiro_mul(HabiroElement.one(level), x) == x
    a = HabiroElement.from_poly((1, -1), level)
    assert habiro_mul(a, a).representative == (1, -2, 1)
    full = HabiroElement.from_poly(poly.pochhammer(level + 1), level)
    assert full.is_zero()
    assert habiro_mul(full, HabiroElement.one(level)).is_zero()


def test_level_mismatch():
    with pytest.raises(InvalidArgument):
        habiro_add(HabiroElement.one(3), HabiroElement.one(4))


def test_representative_reduction_matches_sympy():
    rng = random.Random(7)
    for _ in range(30):
        level = rng.randint(1, 5)
        p = [rng.randint(-5, 5) for _ in range(rng.randint(1, 30))]
        e = HabiroElement.from_poly(p, level)
        diff = sympy.expand(as_expr(p) - as_expr(e.representative))
        assert sympy.rem(diff, pochhammer_expr(level + 1), q) == 0
        assert len(e.representative) <= pochhammer_modulus(level).degree


def test_evaluation_examples():
    assert evaluate_at_root(HabiroElement.one(6), 7) == CyclotomicInteger.from_int(1, 7)
    assert evaluate_at_root(HabiroElement.from_poly((0, 1), 5), 4) == CyclotomicInteger.xi(4)
    for k in range(1, 6):
        e = from_factorial_series([()] * k + [(1,)], 5)
        for n in range(1, k + 1):
            assert evaluate_at_root(e, n).is_zero()


def test_evaluation_needs_enough_precision():
    with pytest.raises(PrecisionExceeded):
        evaluate_at_root(HabiroElement.one(3), 5)


def test_evaluation_numeric_oracle():
    rng = random.Random(11)
    for _ in range(30):
        e = random_habiro(rng, 5)
        for n in range(1, 7):
            z = cmath.exp(2j * cmath.pi / n)
            direct = sum(c * z**i for i, c in enumerate(e.representative))
            assert abs(evaluate_at_root(e, n).to_complex() - direct) < 1e-6 * (1 + abs(direct))


def test_taylor_examples():
    assert taylor_at_one(HabiroElement.one(5)).coefficients == (1, 0, 0, 0, 0, 0)
    assert taylor_at_one(HabiroElement.from_poly((0, 1), 5)).coefficients == (1, -1, 0, 0, 0, 0)
    e = HabiroElement.from_poly(poly.pochhammer(2), 5)
    assert taylor_at_one(e).coefficients == (0, 0, 2, -1, 0, 0)


def test_taylor_sympy_oracle():
    rng = random.Random(5)
    for _ in range(20):
        e = random_habiro(rng, 5)
        expr = sympy.expand(as_expr(e.representative).subs(q, 1 - h))
        want = [int(expr.coeff(h, k)) for k in range(6)]
        assert list(taylor_at_one(e).coefficients) == want


def test_taylor_is_well_defined_on_the_quotient():
    # adding a multiple of (q;q)_{N+1} changes nothing below h^{N+1}
    e = HabiroElement.from_poly((2, 5, -1), 4)
    bumped = poly.add(e.representative, poly.mul((1, 3), poly.pochhammer(5)))
    assert taylor_at_one(HabiroElement.from_poly(bumped, 4)) == taylor_at_one(e)


def test_lower_level_commutes_with_operations():
    rng = random.Random(2)
    for _ in range(20):
        a, b = random_habiro(rng, 5), random_habiro(rng, 5)
        assert lower_level(habiro_mul(a, b), 3) == habiro_mul(lower_level(a, 3), lower_level(b, 3))


def test_series_truncated_product():
    s = OneMinusQSeries.from_poly((0, 1), 3)
    assert (s * s).coefficients == (0, 0, 1)
    assert not any((s * s * s).coefficients)
