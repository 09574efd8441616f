from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chiloc.exact import (
    PoleAtOriginError,
    Polynomial,
    QuasiPolynomial,
    RationalFunction,
    VerificationError,
    format_rational,
    one_minus_power,
    qpoly_eval,
    qpoly_interpolate,
    qpoly_to_genfun,
    ratfun_equal,
    series_coefficients,
)

small = st.integers(-6, 6)
polys = st.lists(small, min_size=1, max_size=5).map(Polynomial)
units = st.lists(small, min_size=0, max_size=4).map(lambda cs: Polynomial([1] + cs))


def test_polynomial_normalises_trailing_zeros():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert Polynomial([0, 0]).degree == -1
    assert Polynomial([1, 2]) == Polynomial([Fraction(1), Fraction(2)])


def test_polynomial_arithmetic():
    p = Polynomial([1, 1])
    assert p**3 == Polynomial([1, 3, 3, 1])
    assert p * p - p == Polynomial([0, 1, 1])
    assert p(Fraction(1, 2)) == Fraction(3, 2)
    assert Polynomial([0, 0, 1]).substitute_shift(1) == Polynomial([1, 2, 1])


def test_series_examples():
    inv_sq = RationalFunction(Polynomial([1]), one_minus_power(1) ** 2)
    assert series_coefficients(inv_sq, 4) == [1, 2, 3, 4]
    f = RationalFunction(Polynomial.monomial(1), one_minus_power(1) ** 4)
    assert series_coefficients(f, 4)[3] == 10
    g = RationalFunction(Polynomial([0, 1, 4, 1]), one_minus_power(1) ** 2 * one_minus_power(2) ** 2)
    assert series_coefficients(g, 6) == [0, 1, 6, 14, 30, 51]


def test_pole_at_origin_rejected():
    with pytest.raises(PoleAtOriginError):
        series_coefficients(RationalFunction(Polynomial([1]), Polynomial([0, 1])), 3)


def test_ratfun_equal():
    t = Polynomial.monomial(1)
    a = RationalFunction(t, one_minus_power(1))
    b = RationalFunction(t * Polynomial([1, 1]), one_minus_power(2))
    assert ratfun_equal(a, b)
    assert not ratfun_equal(a, RationalFunction(t, one_minus_power(2)))


@given(small, st.integers(1, 9), small, st.integers(1, 9))
def test_rational_exactness(a, b, c, d):
    x, y = Fraction(a, b), Fraction(c, d)
    assert (x + y) * b * d == a * d + c * b


@given(polys, units, polys, units)
def test_series_of_product_is_convolution(n1, d1, n2, d2):
    f, g = RationalFunction(n1, d1), RationalFunction(n2, d2)
    k = 8
    sf, sg = series_coefficients(f, k), series_coefficients(g, k)
    conv = [sum(sf[i] * sg[j - i] for i in range(j + 1)) for j in range(k)]
    assert series_coefficients(f * g, k) == conv


def test_interpolate_square():
    q = qpoly_interpolate(1, 2, lambda m: m * m)
    assert q.rows == ((0, 0, 1),)


def test_interpolate_failure_names_residue():
    with pytest.raises(VerificationError) as info:
        qpoly_interpolate(2, 1, lambda m: m**3)
    assert info.value.residue in (0, 1)


def test_interpolate_matches_closed_form_n1():
    from chiloc.euler import chi_loc_closed

    q = qpoly_interpolate(2, 3, lambda m: chi_loc_closed(1, m))
    assert [qpoly_eval(q, m) for m in (1, 2, 3)] == [1, 6, 14]


@pytest.mark.parametrize("shift", [0, 1])
def test_genfun_round_trip(shift):
    q = QuasiPolynomial(3, 2, ((0, 1, 1), (1, 0, 2), (Fraction(1, 2), Fraction(1, 2), 1)))
    f = qpoly_to_genfun(q, shift)
    coeffs = series_coefficients(f, 18)
    assert coeffs == [qpoly_eval(q, m + shift) for m in range(18)]


def test_qpoly_json_round_trip():
    q = QuasiPolynomial(2, 3, ((0, Fraction(1, 2)), (Fraction(-1, 4), 0, 0, Fraction(1, 4))))
    data = q.to_json()
    assert data["rows"][1] == ["-1/4", "0", "0", "1/4"]
    assert QuasiPolynomial.from_json(data) == q


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"
