import cmath
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zonal.cyclotomic import (
    CyclotomicNumber,
    cyclo_root,
    cyclotomic_polynomial,
    euler_phi,
    exact_conjugate,
    exact_contract,
    exact_multiply,
    from_integer_array,
    to_integer_array,
)


def test_polynomial_examples():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("r", range(1, 41))
def test_polynomial_matches_sympy(r):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(r, x), x).all_coeffs()[::-1]
    assert cyclotomic_polynomial(r) == tuple(int(c) for c in expected)
    assert euler_phi(r) == len(expected) - 1


def test_root_examples():
    assert cyclo_root(4, 1).coeffs == (0, 1)
    assert cyclo_root(2, 1) == CyclotomicNumber.rational(2, -1)
    assert cyclo_root(6, 3) == CyclotomicNumber.rational(6, -1)
    z4 = cyclo_root(4, 1)
    assert z4 * z4 == CyclotomicNumber.rational(4, -1)
    assert z4 + CyclotomicNumber.zero(4) == z4


@pytest.mark.parametrize("r", range(1, 31))
def test_roots_inverse_and_sum(r):
    for k in range(r):
        assert cyclo_root(r, k) * cyclo_root(r, r - k) == CyclotomicNumber.one(r)
    total = sum((cyclo_root(r, k) for k in range(r)), CyclotomicNumber.zero(r))
    assert total.is_zero() == (r > 1)


def test_conjugate_examples():
    z4 = cyclo_root(4, 1)
    assert z4.conjugate() == -z4
    q = CyclotomicNumber.rational(7, Fraction(3, 5))
    assert q.conjugate() == q
    one = CyclotomicNumber.one(3)
    assert (one - cyclo_root(3, 1)).conjugate() == one - cyclo_root(3, 2)


def test_to_complex_examples():
    assert abs(cyclo_root(4, 1).to_complex() - 1j) < 1e-12
    assert abs((cyclo_root(3, 1) + cyclo_root(3, 2)).to_complex() + 1) < 1e-12
    c = (cyclo_root(8, 1) + cyclo_root(8, 7)) / 2
    assert abs(c.to_complex() - 2**0.5 / 2) < 1e-6


def test_mixed_orders_rejected():
    with pytest.raises(ValueError):
        cyclo_root(3, 1) + cyclo_root(4, 1)


def test_json_round_trip():
    v = cyclo_root(5, 2) * Fraction(-7, 3) + 1
    assert CyclotomicNumber.from_json(v.to_json()) == v


orders = st.integers(min_value=1, max_value=16)


@st.composite
def field_elements(draw, order=None):
    r = order if order is not None else draw(orders)
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=6),
            min_size=euler_phi(r),
            max_size=euler_phi(r),
        )
    )
    return CyclotomicNumber(r, coeffs)


@st.composite
def triples(draw):
    r = draw(orders)
    return tuple(draw(field_elements(r)) for _ in range(3))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == CyclotomicNumber.zero(a.order)


@settings(max_examples=150, deadline=None)
@given(triples())
def test_conjugation_homomorphism(t):
    a, b, _ = t
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@settings(max_examples=150, deadline=None)
@given(triples())
def test_to_complex_is_multiplicative(t):
    a, b, _ = t
    assert cmath.isclose((a * b).to_complex(), a.to_complex() * b.to_complex(), abs_tol=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=12), st.data())
def test_integer_array_kernels(r, data):
    A = [[data.draw(field_elements(r)) for _ in range(3)] for _ in range(2)]
    B = [[data.draw(field_elements(r)) for _ in range(3)] for _ in range(4)]
    da, IA = to_integer_array(A, r)
    db, IB = to_integer_array(B, r)
    assert from_integer_array(IA, r, da) == A
    # contraction over the shared length-3 axis
    G = from_integer_array(exact_contract(IA, IB, axes=([1], [1]), order=r), r, da * db)
    for i in range(2):
        for j in range(4):
            want = sum((A[i][t] * B[j][t] for t in range(3)), CyclotomicNumber.zero(r))
            assert G[i][j] == want
    P = from_integer_array(exact_multiply(IA, IB[:2], r), r, da * db)
    assert P == [[A[i][t] * B[i][t] for t in range(3)] for i in range(2)]
    C = from_integer_array(exact_conjugate(IA, r), r, da)
    assert C == [[v.conjugate() for v in row] for row in A]


def test_integer_kernels_survive_large_entries():
    r = 5
    big = CyclotomicNumber(r, [10**30, -(10**29), 3, 1])
    _, I = to_integer_array([[big, big]], r)
    out = exact_contract(I, I, axes=([1], [1]), order=r)
    assert out.dtype == object
    assert CyclotomicNumber.from_integer_vector(r, out[0, 0]) == big * big * 2
    assert np.all(np.asarray(exact_conjugate(I, r)[0, 0]) == np.asarray((big.conjugate()).coeffs, dtype=object))
