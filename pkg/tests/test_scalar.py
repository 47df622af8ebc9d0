from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ksgraph.scalar import Scalar, format_rational, gaussian_gcd, parse_rational, parse_scalar

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
scalars = st.builds(Scalar, rationals, rationals)


@pytest.mark.parametrize(
    "text, re, im",
    [
        ("3", 3, 0),
        ("-3/4", Fraction(-3, 4), 0),
        ("3i", 0, 3),
        ("-i", 0, -1),
        ("i", 0, 1),
        ("1-i", 1, -1),
        ("1/2+3/4i", Fraction(1, 2), Fraction(3, 4)),
        ("-2/3-5i", Fraction(-2, 3), -5),
        ("0.96", Fraction(24, 25), 0),
        ("4/6", Fraction(2, 3), 0),
    ],
)
def test_parse_scalar(text, re, im):
    s = parse_scalar(text)
    assert (s.re, s.im) == (Fraction(re), Fraction(im))


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1.5.2", "2e3", "1+2j"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_decimal_is_exact():
    assert parse_rational("0.7") == Fraction(7, 10)
    assert parse_rational("0.40") == Fraction(2, 5)


def test_lowest_terms_and_positive_denominator():
    s = Scalar(Fraction(6, -8), Fraction(10, 4))
    assert s.re.denominator == 4 and s.re.numerator == -3
    assert s.im == Fraction(5, 2)


def test_arithmetic_against_complex_oracle():
    a, b = Scalar(1, 2), Scalar(Fraction(3, 5), Fraction(-4, 5))
    assert a * b == Scalar(Fraction(3, 5) + Fraction(8, 5), Fraction(-4, 5) + Fraction(6, 5))
    assert (a / b) * b == a
    assert a - a == 0
    assert 1 / Scalar(0, 1) == Scalar(0, -1)


def test_real_scalars_equal_plain_numbers():
    assert Scalar(3) == 3
    assert Scalar(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(Scalar(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert Scalar(1, 1) != 1


def test_immutable():
    with pytest.raises(AttributeError):
        Scalar(1).re = Fraction(2)


def test_str_roundtrip():
    for text in ["0", "-7/3", "i", "-i", "2/3+i", "1/2-5/7i", "4i"]:
        assert str(parse_scalar(text)) == text


@given(scalars)
def test_conj_is_involution(x):
    assert x.conj().conj() == x


@given(scalars, scalars)
def test_conj_is_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()


@given(scalars)
def test_abs2_matches_product_with_conjugate(x):
    assert x * x.conj() == x.abs2()
    assert x.abs2() >= 0


@given(scalars)
def test_format_parse_roundtrip(x):
    assert parse_scalar(str(x)) == x


def test_format_rational():
    assert format_rational(Fraction(24, 25)) == "24/25"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize(
    "a, b",
    [((4, 0), (6, 0)), ((2, 2), (0, 4)), ((3, 4), (1, 2)), ((5, 0), (3, 4)), ((0, 0), (7, 1))],
)
def test_gaussian_gcd_divides_both(a, b):
    g = gaussian_gcd(a, b)
    n = g[0] ** 2 + g[1] ** 2
    for z in (a, b):
        # z / g is a Gaussian integer
        pr = z[0] * g[0] + z[1] * g[1]
        pi = z[1] * g[0] - z[0] * g[1]
        assert pr % n == 0 and pi % n == 0
