from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from volcheck.poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    MultiPoly,
    block_elim_order,
    poly_content_free,
)


def P(n, d):
    return MultiPoly(n, {k: Fraction(v) for k, v in d.items()})


x = MultiPoly.var(0, 2)
y = MultiPoly.var(1, 2)
one = MultiPoly.const(2, 1)


def test_zero_coefficients_dropped():
    p = P(2, {(1, 0): 1, (0, 1): 0})
    assert (0, 1) not in p.coeffs
    assert p == x


def test_arity_mismatch_raises():
    with pytest.raises(ValueError):
        x + MultiPoly.var(0, 3)


def test_grevlex_vs_lex_leading():
    # x*y^2 vs x^2: grevlex prefers higher total degree, lex prefers x power
    p = P(2, {(1, 2): 1, (2, 0): 1})
    assert p.leading(GREVLEX)[0] == (1, 2)
    assert p.leading(LEX)[0] == (2, 0)


def test_block_order_eliminates_first():
    # eliminating y: any monomial containing y beats any y-free monomial
    ord_ = block_elim_order([1], 2)
    p = P(2, {(5, 0): 1, (0, 1): 1})
    assert p.leading(ord_)[0] == (0, 1)


def test_order_admissible_under_multiplication():
    ordx = GREVLEX
    a, b, c = (1, 2), (2, 0), (1, 1)
    assert ordx.key(a) > ordx.key(b)
    assert ordx.key(tuple(u + w for u, w in zip(a, c))) > ordx.key(
        tuple(u + w for u, w in zip(b, c))
    )


def test_substitute_and_evaluate():
    p = x * x + y
    q = p.substitute(0, one - y)  # (1-y)^2 + y
    assert q.evaluate([Fraction(0), Fraction(2)]) == Fraction(3)


def test_extend_contract_roundtrip():
    p = x * y + one
    assert p.extend(4).contract(2) == p
    with pytest.raises(ValueError):
        (MultiPoly.var(2, 3)).contract(2)


def test_content_free():
    p = P(2, {(1, 0): Fraction(2, 3), (0, 1): Fraction(-4, 3)})
    q = poly_content_free(p)
    assert q == P(2, {(1, 0): 1, (0, 1): -2})


coef = st.integers(-5, 5).map(Fraction)
expo = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(expo, coef, max_size=5).map(lambda d: MultiPoly(2, d))


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a - a == MultiPoly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(0, 4))
def test_pow_matches_repeated_mul(p, n):
    q = MultiPoly.const(2, 1)
    for _ in range(n):
        q = q * p
    assert p**n == q
