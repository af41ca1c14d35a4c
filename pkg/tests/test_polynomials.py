"""Coefficient domains, monomial orders, sparse polynomial arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localmodels.errors import DomainError
from localmodels.polynomials import (
    DEGREVLEX,
    DEFAULT_PRIME,
    LEX,
    PI_NAME,
    Poly,
    PrimeField,
    QQ,
    ZZ,
    elimination_order,
    field_from_tag,
    int_polys_from,
    prime_field,
    primitive_int_terms,
)


def test_rational_domain():
    assert QQ.is_field and QQ.tag == "Q"
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert QQ.from_int(5) == Fraction(5)
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


def test_integer_domain_is_not_a_field():
    assert not ZZ.is_field
    assert ZZ.mul(3, -4) == -12
    with pytest.raises(DomainError):
        ZZ.inv(2)


def test_prime_field_arithmetic():
    F7 = PrimeField(7)
    assert F7.add(5, 4) == 2
    assert F7.inv(3) == 5
    assert F7.neg(3) == 4
    # rationals land via modular inverse of the denominator
    assert F7.from_int(Fraction(1, 2)) == 4
    with pytest.raises(DomainError):
        PrimeField(6)
    with pytest.raises(ZeroDivisionError):
        F7.inv(7)


def test_field_tags():
    assert field_from_tag("Q") is QQ
    assert field_from_tag("Fp").p == DEFAULT_PRIME
    assert field_from_tag("Fp:7").p == 7
    assert prime_field().p == DEFAULT_PRIME
    assert prime_field(7) is prime_field(7)
    with pytest.raises(DomainError):
        field_from_tag("R")


def test_degrevlex_comparisons():
    key = DEGREVLEX.key
    # degree first, then reverse lexicographic tie break
    assert key((2, 0)) > key((1, 1)) > key((0, 2))
    assert key((3, 0)) > key((2, 1))
    assert key((0, 3)) > key((1, 1))


def test_lex_comparisons():
    key = LEX.key
    assert key((1, 0)) > key((0, 3))
    assert key((2, 1)) > key((2, 0))


def test_block_order_eliminates_first_variables():
    order = elimination_order(1)
    key = order.key
    # any positive power of the first variable beats anything without it
    assert key((1, 0, 1)) > key((0, 5, 5))
    # ties in the block fall back to degrevlex on the rest
    assert key((1, 2, 0)) > key((1, 0, 2))
    with pytest.raises(DomainError):
        elimination_order(0)


def test_variable_zero_is_largest():
    for order in (LEX, DEGREVLEX):
        for i in (1, 2):
            e0 = tuple(1 if j == 0 else 0 for j in range(3))
            ei = tuple(1 if j == i else 0 for j in range(3))
            assert order.key(e0) > order.key(ei)


def _x(i, nvars=2):
    return Poly.variable(QQ, nvars, i)


def test_poly_arithmetic():
    x, y = _x(0), _x(1)
    sq = (x + y) ** 2
    assert sq.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert (sq - sq).is_zero()
    assert (x * Poly.zero(QQ, 2)).is_zero()
    assert (x ** 0).terms == {(0, 0): 1}
    assert x.total_degree() == 1
    assert Poly.zero(QQ, 2).total_degree() == -1
    assert Poly.const(QQ, 2, Fraction(3)).is_constant()
    assert not (x + y).is_constant()
    with pytest.raises(DomainError):
        x ** -1


def test_scale_and_term_mul():
    x, y = _x(0), _x(1)
    p = x + y
    assert p.scale(Fraction(0)).is_zero()
    assert p.scale(Fraction(2)).terms == {(1, 0): 2, (0, 1): 2}
    shifted = p.term_mul(Fraction(3), (1, 1))
    assert shifted.terms == {(2, 1): 3, (1, 2): 3}


def test_leading_and_monic():
    x, y = _x(0), _x(1)
    p = (x * x).scale(Fraction(2)) + y
    e, c = p.leading(DEGREVLEX)
    assert e == (2, 0) and c == 2
    m = p.monic(DEGREVLEX)
    assert m.terms == {(2, 0): 1, (0, 1): Fraction(1, 2)}
    with pytest.raises(DomainError):
        Poly.zero(QQ, 2).leading(DEGREVLEX)


def test_freeze_round_trip():
    x, y = _x(0), _x(1)
    p = x * y - Poly.const(QQ, 2, Fraction(5))
    assert Poly.from_frozen(p.freeze(), QQ, 2) == p


def test_convert_to_prime_field():
    F7 = prime_field(7)
    x = _x(0)
    half = x.scale(Fraction(1, 2))
    assert half.convert(F7).terms == {(1, 0): 4}
    # coefficients divisible by p vanish
    seven = x.scale(Fraction(7))
    assert seven.convert(F7).is_zero()


def test_primitive_int_terms_examples():
    terms = {(1, 0): Fraction(2, 3), (0, 1): Fraction(4, 3)}
    assert primitive_int_terms(terms) == {(1, 0): 1, (0, 1): 2}
    # the coefficient at the largest exponent tuple ends up positive
    assert primitive_int_terms({(1, 0): -1, (0, 1): 1}) == {(1, 0): 1, (0, 1): -1}
    assert primitive_int_terms({}) == {}


def test_int_polys_ignore_scalar_factors():
    x, y = _x(0), _x(1)
    p = x * y + y.scale(Fraction(2))
    q = p.scale(Fraction(-3, 7))
    assert int_polys_from([p]) == int_polys_from([q])


def test_pi_name_is_reserved():
    assert PI_NAME == "π"


_exps = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
_polys = st.lists(
    st.tuples(_exps, st.integers(-5, 5)), min_size=0, max_size=4
).map(lambda items: Poly(QQ, 3, {e: Fraction(c) for e, c in items}))


@given(_polys, _polys, _polys)
def test_distributivity(f, g, h):
    assert (f + g) * h == f * h + g * h


@given(_polys, _polys)
def test_multiplication_commutes(f, g):
    assert f * g == g * f


@given(_polys)
def test_additive_inverse(f):
    assert (f + (-f)).is_zero()


@given(_polys, _polys)
def test_leading_monomial_of_product(f, g):
    if f.is_zero() or g.is_zero():
        return
    ef, _ = f.leading(DEGREVLEX)
    eg, _ = g.leading(DEGREVLEX)
    ep, _ = (f * g).leading(DEGREVLEX)
    assert ep == tuple(a + b for a, b in zip(ef, eg))


@given(_polys, _polys)
def test_convert_is_a_ring_map(f, g):
    F11 = prime_field(11)
    assert (f * g).convert(F11) == f.convert(F11) * g.convert(F11)
    assert (f + g).convert(F11) == f.convert(F11) + g.convert(F11)


@given(_polys)
def test_monic_is_idempotent(f):
    if f.is_zero():
        return
    m = f.monic(DEGREVLEX)
    assert m.monic(DEGREVLEX) == m
    assert m.leading(DEGREVLEX)[1] == 1
