"""Exact Gaussian-rational scalars, the ground field Q(i) of every computation."""

from fractions import Fraction
import re

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar", "parse_scalar"]

_Rational = (int, Fraction)


class Scalar:
    """An element re + im*i of Q(i) with exact rational parts.

    Instances are immutable.  Plain ints and Fractions are accepted wherever a
    Scalar is expected.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            re, im = re.re, re.im + Fraction(im)
        elif isinstance(re, str):
            s = parse_scalar(re)
            re, im = s.re, s.im + Fraction(im)
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # predicates -------------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if type(other) is not Scalar:
            if isinstance(other, _Rational):
                return Scalar._make(self.re + other, self.im)
            return NotImplemented
        return Scalar._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Scalar:
            if isinstance(other, _Rational):
                return Scalar._make(self.re - other, self.im)
            return NotImplemented
        return Scalar._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if isinstance(other, _Rational):
            return Scalar._make(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return Scalar._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is not Scalar:
            if isinstance(other, _Rational):
                return Scalar._make(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._make(a * c, b)
        return Scalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero scalar")
            return Scalar._make(1 / a, b)
        n = a * a + b * b
        return Scalar._make(a / n, -b / n)

    def __truediv__(self, other):
        if type(other) is not Scalar:
            if isinstance(other, _Rational):
                if not other:
                    raise ZeroDivisionError("division by zero scalar")
                return Scalar._make(self.re / other, self.im / other)
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, _Rational):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return Scalar._make(self.re, -self.im)

    def abs2(self):
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        if self.im:
            raise ValueError("absolute value of a non-real scalar is not rational in general")
        return abs(self.re)

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if type(other) is Scalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, _Rational):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # text -------------------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


ZERO = Scalar._make(Fraction(0), Fraction(0))
ONE = Scalar._make(Fraction(1), Fraction(0))
I = Scalar._make(Fraction(0), Fraction(1))


def as_scalar(x):
    if type(x) is Scalar:
        return x
    if isinstance(x, _Rational):
        return Scalar._make(Fraction(x), Fraction(0))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def _frac(q):
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s):
    """Canonical text: 'p/q' when real, else 'p/q+r/s*i' (sign on numerators)."""
    if not s.im:
        return _frac(s.re)
    return f"{_frac(s.re)}+{_frac(s.im)}*i"


_RAT = r"[+-]?\d+(?:/\d+)?"
_FULL = re.compile(rf"^\s*({_RAT})\s*\+\s*({_RAT})\s*\*\s*i\s*$")
_REAL = re.compile(rf"^\s*({_RAT})\s*$")
_IMAG = re.compile(rf"^\s*({_RAT})?\s*\*?\s*i\s*$")


def parse_scalar(text):
    """Parse 'p/q', 'p/q+r/s*i', a bare integer, or 'r/s*i'."""
    if isinstance(text, Scalar):
        return text
    if isinstance(text, _Rational):
        return as_scalar(text)
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string or integer, got {type(text).__name__}")
    m = _FULL.match(text)
    if m:
        return Scalar._make(Fraction(m.group(1)), Fraction(m.group(2)))
    m = _REAL.match(text)
    if m:
        return Scalar._make(Fraction(m.group(1)), Fraction(0))
    m = _IMAG.match(text)
    if m:
        coeff = m.group(1)
        im = Fraction(coeff) if coeff not in (None, "+", "-") else Fraction(1)
        return Scalar._make(Fraction(0), im)
    raise ValueError(f"malformed scalar {text!r}")
