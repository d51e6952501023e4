"""Exact Gaussian-rational scalars.

A :class:`Scalar` is ``p/q + (r/s)i`` with both parts stored as reduced
:class:`fractions.Fraction` values, so equality is structural and hashing is
consistent with it.  Real scalars compare equal to the matching ``int`` and
``Fraction``.

Textual form (no spaces): ``p``, ``p/q``, ``p/q+r/si``, ``p/q-r/si``.  The
parser also accepts a bare imaginary part such as ``2/5i`` or ``-i``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Scalar",
    "ScalarDivisionError",
    "ScalarSyntaxError",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "parse_scalar",
    "format_scalar",
]


class ScalarDivisionError(ZeroDivisionError):
    """Division of a scalar by exact zero."""


class ScalarSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        super().__init__(f"bad scalar {text!r} at position {pos}: expected {expected}")


Coercible = Union["Scalar", int, Fraction]


class Scalar:
    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)
        self._hash = None

    # raw-field views, mostly for reports and tests
    @property
    def re_num(self) -> int:
        return self.re.numerator

    @property
    def re_den(self) -> int:
        return self.re.denominator

    @property
    def im_num(self) -> int:
        return self.im.numerator

    @property
    def im_den(self) -> int:
        return self.im.denominator

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        s._hash = None
        return s

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conj(self) -> "Scalar":
        return Scalar._make(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus ``|x|^2`` (always rational)."""
        return self.re * self.re + self.im * self.im

    def __neg__(self) -> "Scalar":
        return Scalar._make(-self.re, -self.im)

    def __pos__(self) -> "Scalar":
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            if not d:
                return Scalar._make(a * c, d)
            return Scalar._make(a * c, a * d)
        if not d:
            return Scalar._make(a * c, b * c)
        return Scalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ScalarDivisionError("division by zero scalar")
        if not self.im:
            return Scalar._make(1 / self.re, self.im)
        n = self.norm2()
        return Scalar._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self._hash is None:
            # agree with hash(int) / hash(Fraction) for real values
            self._hash = hash(self.re) if not self.im else hash((self.re, self.im))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def _coerce(x) -> Scalar | None:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Rational)):
        return Scalar._make(Fraction(x), Fraction(0))
    if isinstance(x, Scalar):
        return x
    return None


def as_scalar(x: Coercible | str) -> Scalar:
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {type(x).__name__} as a Gaussian rational")
    return s


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)


def _fmt_frac(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x: Coercible) -> str:
    """Canonical text: real part always present, imaginary part only if nonzero."""
    x = as_scalar(x)
    out = _fmt_frac(x.re)
    if x.im:
        sign = "-" if x.im < 0 else "+"
        out += f"{sign}{_fmt_frac(abs(x.im))}i"
    return out


_NUM = r"(\d+)(?:/(\d+))?"
_SCALAR_RE = re.compile(
    rf"""
    (?P<rsign>[-+]?)(?P<re>{_NUM})(?![\d/i])
      (?:(?P<isign>[-+])(?P<im>{_NUM})?(?P<i1>i))?
    |
    (?P<osign>[-+]?)(?P<only>{_NUM})?(?P<i2>i)
    """,
    re.VERBOSE,
)


def _frac(num: str, den: str | None, text: str, pos: int) -> Fraction:
    if den is not None and int(den) == 0:
        raise ScalarSyntaxError(text, pos, "nonzero denominator")
    return Fraction(int(num), int(den) if den is not None else 1)


def match_scalar(text: str, pos: int = 0) -> tuple[Scalar, int] | None:
    """Match a scalar literal at ``text[pos:]``; return (value, end) or None."""
    m = _SCALAR_RE.match(text, pos)
    if not m or m.end() == pos:
        return None
    g = m.groups()
    # group layout: rsign, re, n, d, isign, im, n, d, i1, osign, only, n, d, i2
    if m.group("re") is not None:
        re_ = _frac(g[2], g[3], text, m.start("re"))
        if m.group("rsign") == "-":
            re_ = -re_
        im_ = Fraction(0)
        if m.group("i1"):
            im_ = _frac(g[6], g[7], text, m.start("isign")) if m.group("im") else Fraction(1)
            if m.group("isign") == "-":
                im_ = -im_
        return Scalar(re_, im_), m.end()
    im_ = _frac(g[11], g[12], text, m.start("i2")) if m.group("only") else Fraction(1)
    if m.group("osign") == "-":
        im_ = -im_
    return Scalar(0, im_), m.end()


def parse_scalar(text: str) -> Scalar:
    """Parse the textual scalar format; whitespace is not allowed inside."""
    t = text.strip()
    hit = match_scalar(t)
    if hit is None:
        raise ScalarSyntaxError(text, 0, "scalar literal")
    value, end = hit
    if end != len(t):
        raise ScalarSyntaxError(text, end, "end of scalar")
    return value
