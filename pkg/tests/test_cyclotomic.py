import cmath

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qtopo import poly
from qtopo.cyclotomic import CyclotomicInteger, cyclo_reduce, cyclotomic_polynomial, totient
from qtopo.errors import InvalidArgument

q = sympy.Symbol("q")


def sympy_coeffs(expr):
    return tuple(int(c) for c in reversed(sympy.Poly(expr, q).all_coeffs()))


@pytest.mark.parametrize("n, expected", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1))])
def test_small_cyclotomic_polynomials(n, expected):
    assert cyclotomic_polynomial(n).coefficients == expected


@pytest.mark.parametrize("n", range(1, 41))
def test_matches_sympy(n):
    phi = cyclotomic_polynomial(n)
    assert phi.coefficients == sympy_coeffs(sympy.cyclotomic_poly(n, q))
    assert phi.degree == totient(n)


def test_rejects_nonpositive_order():
    with pytest.raises(InvalidArgument):
        cyclotomic_polynomial(0)


def test_product_over_divisors_is_q_n_minus_1():
    for n in range(1, 25):
        prod = (1,)
        for d in sympy.divisors(n):
            prod = poly.mul(prod, cyclotomic_polynomial(d).coefficients)
        assert prod == (-1,) + (0,) * (n - 1) + (1,)


@pytest.mark.parametrize("p, n, expected", [
    ((0, 0, 1), 4, (-1, 0)),
    ((0, 1), 1, (1,)),
    ((0, 1, 0, 1), 4, (0, 0)),
])
def test_reduce_examples(p, n, expected):
    assert cyclo_reduce(p, n).coefficients == expected


def test_reduce_agrees_with_sympy_remainder():
    rng = __import__("random").Random(3)
    for _ in range(60):
        n = rng.randint(1, 24)
        p = [rng.randint(-9, 9) for _ in range(rng.randint(1, 14))]
        expr = sum(c * q**i for i, c in enumerate(p))
        rem = sympy.rem(expr, sympy.cyclotomic_poly(n, q), q)
        want = list(sympy_coeffs(rem)) if rem != 0 else []
        want += [0] * (totient(n) - len(want))
        assert cyclo_reduce(p, n).coefficients == tuple(want)


polys = st.lists(st.integers(-20, 20), min_size=1, max_size=13)


@settings(max_examples=150, deadline=None)
@given(polys, polys, st.integers(1, 24))
def test_reduction_is_a_ring_homomorphism(p1, p2, n):
    r1, r2 = cyclo_reduce(p1, n), cyclo_reduce(p2, n)
    assert cyclo_reduce(poly.mul(p1, p2), n) == r1 * r2
    assert cyclo_reduce(poly.add(p1, p2), n) == r1 + r2
    assert cyclo_reduce(poly.sub(p1, p2), n) == r1 - r2


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(1, 24))
def test_numeric_value_at_every_primitive_root(p, n):
    r = cyclo_reduce(p, n)
    for k in range(1, n + 1):
        if sympy.gcd(k, n) != 1:
            continue
        z = cmath.exp(2j * cmath.pi * k / n)
        direct = sum(c * z**i for i, c in enumerate(p))
        assert abs(r.to_complex(k) - direct) < 1e-6 * (1 + abs(direct))


def test_xi_has_order_n():
    for n in range(1, 13):
        x = CyclotomicInteger.xi(n)
        acc = CyclotomicInteger.from_int(1, n)
        for _ in range(n):
            acc = acc * x
        assert acc == CyclotomicInteger.from_int(1, n)


def test_length_validation():
    with pytest.raises(InvalidArgument):
        CyclotomicInteger(4, (1, 2, 3))
