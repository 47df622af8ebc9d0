"""Exact Gaussian-rational scalars.

A :class:`Scalar` is ``re + im*i`` with both parts held as
:class:`fractions.Fraction`, so denominators are always positive and in lowest
terms. Real scalars compare and hash equal to the matching ``int`` or
``Fraction``.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "parse_scalar", "parse_rational", "format_rational", "gaussian_gcd"]


class Scalar:
    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: object = 0, im: object = 0) -> None:
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> Scalar:
        s = object.__new__(cls)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    @classmethod
    def coerce(cls, value: object) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return Scalar._raw(self.re * o.re, _ZERO)
        return Scalar._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> Scalar:
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar._raw(self.re / n, -self.im / n)

    def conj(self) -> Scalar:
        return Scalar._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, always a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # predicates / conversion ---------------------------------------------

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def to_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __eq__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return _imag_str(self.im)
        im = _imag_str(self.im)
        sign = "" if im.startswith("-") else "+"
        return f"{format_rational(self.re)}{sign}{im}"


_ZERO = Fraction(0)


def _to_fraction(x: object) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Scalar):
        return x.to_fraction()
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _as_scalar(x: object) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._raw(Fraction(x), _ZERO)
    return None


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{format_rational(im)}i"


def format_rational(q: Fraction) -> str:
    """``p/q`` text, or just ``p`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RATIONAL = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$")


def parse_rational(text: str) -> Fraction:
    """Parse an integer, ``p/q`` or a finite decimal into an exact Fraction.

    Floats are never produced: ``"0.96"`` parses to ``Fraction(24, 25)``.
    """
    t = text.strip().replace(" ", "")
    if not _RATIONAL.match(t):
        raise ValueError(f"not an exact rational: {text!r}")
    if "/" in t:
        num, den = t.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    if "." in t:
        try:
            return Fraction(Decimal(t))
        except InvalidOperation as exc:  # pragma: no cover - regex guards this
            raise ValueError(f"not an exact rational: {text!r}") from exc
    return Fraction(int(t))


def parse_scalar(text: str) -> Scalar:
    """Parse ``"a"``, ``"a/b"``, ``"c/di"``, ``"a/b+c/di"``, ``"i"``, ``"1-i"``."""
    t = text.strip().replace(" ", "")
    if not t.endswith("i"):
        return Scalar._raw(parse_rational(t), _ZERO)
    body = t[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_text, im_text = body[:cut], body[cut:]
    else:
        re_text, im_text = "", body
    if im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = parse_rational(im_text)
    re_part = parse_rational(re_text) if re_text else _ZERO
    return Scalar._raw(re_part, im_part)


def gaussian_gcd(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """GCD of two Gaussian integers given as ``(re, im)`` pairs (unit-ambiguous)."""
    while b != (0, 0):
        n = b[0] * b[0] + b[1] * b[1]
        # a / b = a * conj(b) / |b|^2, rounded to the nearest Gaussian integer
        pr = a[0] * b[0] + a[1] * b[1]
        pi = a[1] * b[0] - a[0] * b[1]
        qr = _round_div(pr, n)
        qi = _round_div(pi, n)
        r = (a[0] - (qr * b[0] - qi * b[1]), a[1] - (qr * b[1] + qi * b[0]))
        a, b = b, r
    return a


def _round_div(p: int, n: int) -> int:
    return (2 * p + n) // (2 * n)
