from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flatband.algebra.laurent import LaurentPoly
from helpers import laurent_polys, small_rationals

P = laurent_polys()


@given(P, P, P)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(2)


@given(P, P)
def test_conjugate_is_involutive_homomorphism(a, b):
    assert a.conjugate_z().conjugate_z() == a
    assert (a * b).conjugate_z() == a.conjugate_z() * b.conjugate_z()
    assert (a + b).conjugate_z() == a.conjugate_z() + b.conjugate_z()


@given(P, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_shift_is_monomial_product(a, h):
    assert a.shift(h) == a * LaurentPoly.monomial(h)


@given(P, P)
def test_exact_division_recovers_factor(a, b):
    if not b:
        return
    assert (a * b).exact_div(b) == a


def test_exact_division_rejects_non_multiple():
    z1 = LaurentPoly.var(2, 0)
    with pytest.raises(ArithmeticError):
        (z1 + 1).exact_div(z1 - 1)


@given(P, P, st.tuples(small_rationals.filter(bool), small_rationals.filter(bool)))
def test_evaluation_is_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


def test_negative_power_of_monomial():
    z = LaurentPoly.var(2, 1)
    assert z**-3 == LaurentPoly.monomial((0, -3))
    with pytest.raises(ValueError):
        (z + 1) ** -1


def test_render_lex_order():
    p = LaurentPoly(2, {(0, -1): 1, (1, 0): 1, (0, 0): Fraction(-1, 2)})
    assert p.render() == "z2^-1 + (-1/2) + z1"
    q = LaurentPoly(2, {(-1, 0): -1, (0, 0): 1, (0, 1): 1})
    assert q.render() == "(-1)*z1^-1 + 1 + z2"
    assert LaurentPoly.zero(1).render() == "0"


def test_min_max_exponents():
    p = LaurentPoly(2, {(-3, 1): 1, (2, -1): 5})
    assert p.min_exponents() == (-3, -1)
    assert p.max_exponents() == (2, 1)
    assert not p.is_polynomial()


def test_coefficients_are_exact():
    p = LaurentPoly(1, {(0,): 3})
    assert isinstance(p.terms[(0,)], Fraction)
    with pytest.raises(TypeError):
        LaurentPoly(1, {(0,): 0.5})
