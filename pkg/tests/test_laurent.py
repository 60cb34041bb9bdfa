# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dp2_cluster.errors import NotDivisible, ParseError
from dp2_cluster.laurent import LaurentPoly, at_ones, div_exact, eval_integers, parse, swap_reflect, to_text, x

exponents = st.tuples(*[st.integers(-2, 2)] * 5)
polys = st.dictionaries(exponents, st.integers(-4, 4).filter(bool), max_size=4).map(LaurentPoly)


def test_canonical_text():
    assert to_text(parse('x3^2 + x1*x5')) == 'x1*x5 + x3^2'
    assert to_text(parse('2 - x2')) == '-x2 + 2'
    assert to_text(LaurentPoly({(-1, 0, 0, 0, 0): -2})) == '-2*x1^-1'
    assert to_text(LaurentPoly.zero()) == '0'


def test_negative_exponents_follow_positive_ones():
    p = (x(2) * x(5) + x(3) * x(4)) / x(1)
    assert to_text(p) == 'x2*x5*x1^-1 + x3*x4*x1^-1'


def test_repeated_factors_are_accepted():
    assert parse('x3*x3*x4') == parse('x3^2*x4')


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p + q) - q == p
    assert p * LaurentPoly.one() == p


@given(polys)
def test_text_round_trip(p):
    assert parse(to_text(p)) == p


@settings(max_examples=50, deadline=None)
@given(polys, polys.filter(lambda q: not q.is_zero()))
def test_exact_division_inverts_product(p, q):
    assert div_exact(p * q, q) == p


def test_division_by_a_non_factor():
    with pytest.raises(NotDivisible):
        (x(1) + x(2)) / (x(1) + x(3))
    with pytest.raises(NotDivisible):
        x(1) / LaurentPoly.const(2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        x(1) / LaurentPoly.zero()


def test_powers():
    assert x(1) ** -2 * x(1) ** 2 == 1
    assert x(1) ** -2 == LaurentPoly.monomial((-2, 0, 0, 0, 0))
    assert (-x(3) * x(4) ** 2) ** -3 == LaurentPoly.monomial((0, 0, -3, -6, 0), -1)
    assert x(2) ** -1 * x(2) ** -1 == x(2) ** -2
    assert (x(1) + x(2)) ** 2 == x(1) * x(1) + 2 * x(1) * x(2) + x(2) * x(2)
    with pytest.raises(NotDivisible):
        (x(1) + x(2)) ** -1


def test_evaluation():
    assert eval_integers(parse('x1*x2^-1'), [1, 2, 1, 1, 1]) == Fraction(1, 2)
    assert at_ones(parse('2*x1 - x2^-1 + 3')) == 4
    with pytest.raises(ValueError):
        eval_integers(x(1), [0, 1, 1, 1, 1])


def test_swap_reflect():
    assert swap_reflect(parse('x1*x2^2')) == parse('x4^2*x5')
    assert swap_reflect(x(3)) == x(3)


def test_variable_index_outside_range():
    with pytest.raises(ValueError):
        LaurentPoly.var(6)


@pytest.mark.parametrize('text', ['', 'x6', 'x1 +', '* x1', 'x1 x2', 'x1 $ x2'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as error:
        parse('x1 + x9')
    assert error.value.position == 5
