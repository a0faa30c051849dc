"""Exact cyclotomic arithmetic: frozen examples and field-axiom properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotwist.cyclotomic import Cyc, cyclotomic_polynomial, format_scalar, root_from_fraction


def test_i_squared_is_minus_one():
    i = Cyc.root(4, 1)
    assert i * i == Cyc.rational(-1, 4)


def test_conjugation_of_roots():
    for n in (1, 2, 3, 4, 5, 6, 8, 12):
        for k in range(n):
            assert Cyc.root(n, k).conj() == Cyc.root(n, n - k)


def test_cyclotomic_relation_zeta3():
    z = Cyc.root(3)
    s = Cyc.one(3) + z + z * z
    assert s.is_zero()


def test_zeta8_relation():
    z8 = Cyc.root(8)
    assert (z8 ** 4 + Cyc.one(8)).is_zero()


def test_root_inverse():
    z5 = Cyc.root(5)
    assert Cyc.one(5) / z5 == Cyc.root(5, 4)


def test_mixed_order_multiplication():
    # oracle: exponent addition after lcm embedding, zeta6*zeta4 = zeta12^2 * zeta12^3
    prod = Cyc.root(6) * Cyc.root(4)
    assert prod == Cyc.root(12, 5)
    assert prod.order == 12


def test_rejects_bad_order():
    with pytest.raises(ValueError):
        Cyc.root(0, 1)
    with pytest.raises(ValueError):
        Cyc(0)


def test_division_by_zero_distinct_error():
    with pytest.raises(ZeroDivisionError):
        Cyc.one(4) / Cyc.zero(4)


def test_cyclotomic_polynomials():
    assert list(cyclotomic_polynomial(1)) == [Fraction(-1), Fraction(1)]
    assert list(cyclotomic_polynomial(2)) == [Fraction(1), Fraction(1)]
    assert list(cyclotomic_polynomial(4)) == [Fraction(1), Fraction(0), Fraction(1)]
    # Phi_12 = x^4 - x^2 + 1
    assert list(cyclotomic_polynomial(12)) == [
        Fraction(1), Fraction(0), Fraction(-1), Fraction(0), Fraction(1)]


def test_root_from_fraction():
    assert root_from_fraction(Fraction(-1, 3), 12) == Cyc.root(3, 2)
    with pytest.raises(ValueError):
        root_from_fraction(Fraction(1, 5), 12)


small_scalars = st.builds(
    lambda pairs: Cyc(12, {k: Fraction(n, d) for (k, n, d) in pairs}),
    st.lists(
        st.tuples(st.integers(0, 11), st.integers(-4, 4), st.integers(1, 3)),
        max_size=3,
    ),
)


@settings(max_examples=60, deadline=None)
@given(small_scalars, small_scalars, small_scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == Cyc.one(12)


@settings(max_examples=60, deadline=None)
@given(small_scalars, small_scalars)
def test_conj_is_multiplicative_involution(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()


@settings(max_examples=40, deadline=None)
@given(small_scalars, small_scalars)
def test_embedding_commutes_with_arithmetic(a, b):
    assert (a * b).embed(24) == a.embed(24) * b.embed(24)
    assert (a + b).embed(24) == a.embed(24) + b.embed(24)
    assert a.conj().embed(24) == a.embed(24).conj()


def test_format_scalar():
    # zeta12^5 reduces to zeta12^3 - zeta12 mod Phi_12
    c = Cyc(12, {5: Fraction(3, 2), 0: -1})
    assert format_scalar(c) == "-1 - 3/2*zeta(12) + 3/2*zeta(12)^3"
    assert format_scalar(Cyc.zero(7)) == "0"
    assert format_scalar(Cyc.one(7)) == "1"
