from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ringelhall.coeffring import (L, ONE, P, ZERO, NotInLambdaCirc, PoleError, RatFunc,
                                  gauss_binomial, is_lambda_circ, parse_ratfunc, pi_eval,
                                  specialize, specialize_ell)

small = st.integers(-4, 4)
polys = st.lists(small, min_size=1, max_size=4)


@st.composite
def ratfuncs(draw):
    num = draw(polys)
    den = draw(polys.filter(lambda d: any(d)))
    return RatFunc(tuple(num), tuple(den))


def test_ell_is_p_squared():
    assert L == P * P
    assert P ** -2 == ONE / L


def test_canonical_form_cancels():
    assert (L ** 2 - 1) / (L - 1) == L + 1
    assert str((L ** 2 - 1) / (L - 1)) == "L+1"
    assert hash((L ** 2 - 1) / (L - 1)) == hash(L + 1)


def test_gauss_binomial_values():
    assert gauss_binomial(2, 1) == L + 1
    assert gauss_binomial(3, 1) == L ** 2 + L + 1
    assert gauss_binomial(4, 2) == L ** 4 + L ** 3 + 2 * L ** 2 + L + 1
    with pytest.raises(ValueError):
        gauss_binomial(2, 3)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 2), (5, 2)])
def test_gauss_binomial_at_one_is_binomial(n, k):
    from math import comb
    assert pi_eval(gauss_binomial(n, k)) == comb(n, k)


def test_lambda_circ_membership():
    assert is_lambda_circ(1 / (L + 1))
    assert is_lambda_circ(1 / (L + 2))
    assert not is_lambda_circ(1 / (L - 1))
    assert not is_lambda_circ(1 / (P + 1))
    assert pi_eval((L ** 2 - 1) / (L - 1)) == 2
    with pytest.raises(NotInLambdaCirc):
        pi_eval(1 / (L - 1))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(PoleError):
        specialize(1 / (P - 2), 2)


def test_specialize_ell():
    assert specialize_ell(L + 1, 3) == 4
    assert specialize_ell(1 / L, 2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        specialize_ell(P, 4)


@pytest.mark.parametrize("text", ["L+1", "(P^3-1)/P", "-L^2+2*L-1", "1/(L-1)", "P^-3", "0"])
def test_parse_roundtrip(text):
    x = parse_ratfunc(text)
    assert parse_ratfunc(str(x)) == x


def test_parse_errors():
    for bad in ["L+", "(L", "Q", "L^P"]:
        with pytest.raises(SyntaxError):
            parse_ratfunc(bad)


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inv() == ONE


@given(ratfuncs(), st.integers(2, 9))
def test_evaluation_is_a_homomorphism(a, x):
    b = a * a + 1
    if a.den and specialize(RatFunc(a.den), x) != 0:
        assert specialize(b, x) == specialize(a, x) ** 2 + 1


@given(ratfuncs())
def test_text_roundtrip(a):
    assert parse_ratfunc(str(a)) == a


@given(ratfuncs(), ratfuncs())
def test_lambda_circ_is_a_ring(a, b):
    if is_lambda_circ(a) and is_lambda_circ(b):
        assert is_lambda_circ(a + b) and is_lambda_circ(a * b)
        assert pi_eval(a * b) == pi_eval(a) * pi_eval(b)
        assert pi_eval(a + b) == pi_eval(a) + pi_eval(b)


def test_small_values():
    assert P + P == 2 * P
    assert (P ** 2) * (P ** 2).inv() == ONE
    assert (L - 1).inv() == 1 / (P ** 2 - 1)
    assert gauss_binomial(3, 0) == ONE
    assert gauss_binomial(4, 2) == (L ** 2 + 1) * (L ** 2 + L + 1)
    assert pi_eval(gauss_binomial(4, 2)) == 6
    assert pi_eval(RatFunc.const(Fraction(7, 3))) == Fraction(7, 3)
    assert specialize(P - 1, 1) == 0
    assert specialize_ell(L + 1, 2) == 3
    with pytest.raises(PoleError):
        specialize(1 / P, 0)


@pytest.mark.parametrize("c", [1, 2, 3, 5])
def test_geometric_quotients_have_no_pole(c):
    x = (L ** -c - 1) / (L - 1)
    assert is_lambda_circ(x)
    assert pi_eval(x) == -c
    assert is_lambda_circ(L ** -5)
