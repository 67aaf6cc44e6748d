from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutorb.errors import NonLaurentDivision
from mutorb.laurent import LaurentPoly, format_laurent

N = 3
POINT = (Fraction(3, 7), Fraction(-5, 2), Fraction(11, 13))


def evaluate(p: LaurentPoly) -> Fraction:
    total = Fraction(0)
    for e, c in p.terms.items():
        t = Fraction(c)
        for x, k in zip(POINT, e):
            t *= x**k
        total += t
    return total


exps = st.tuples(*[st.integers(-3, 3)] * N)
polys = st.dictionaries(exps, st.integers(-4, 4), max_size=5).map(lambda d: LaurentPoly(N, d))
nonzero = polys.filter(lambda p: bool(p.terms))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly(N)


@given(polys, polys)
def test_arithmetic_matches_evaluation(a, b):
    assert evaluate(a * b) == evaluate(a) * evaluate(b)
    assert evaluate(a + b) == evaluate(a) + evaluate(b)


@given(polys, nonzero)
def test_exact_division_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


def test_non_divisible_quotient_is_rejected():
    x = LaurentPoly.var(0, 2)
    y = LaurentPoly.var(1, 2)
    with pytest.raises(NonLaurentDivision):
        (x * x + y).exact_div(x + y)
    with pytest.raises(NonLaurentDivision):
        (x + 1) ** -1


def test_unit_monomial_inverse():
    x = LaurentPoly.var(0, 2)
    assert (x**-2) * (x**2) == LaurentPoly.const(2)


@given(polys)
def test_json_round_trip(p):
    assert LaurentPoly.from_json(p.to_json()) == p


def test_formatting():
    x1, x2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    p = (1 + x2 * x2).exact_div(x1)
    assert format_laurent(p, ["x1", "x2"]) == "(1 + x2^2)/x1"
    q = (1 + x1 + x2 * x2).exact_div(x1 * x2)
    assert format_laurent(q, ["x1", "x2"]) == "(1 + x1 + x2^2)/(x1*x2)"
    assert format_laurent(x1, ["x1", "x2"]) == "x1"


@given(polys)
def test_positivity_predicate(p):
    assert p.is_positive() == all(c > 0 for c in p.terms.values())
