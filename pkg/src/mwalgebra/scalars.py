"""Exact complex rationals (Gaussian rationals).

The stdlib has :class:`fractions.Fraction` but no complex counterpart, so
``QQi`` is a thin immutable pair of Fractions.  Equality of algebra elements
must be decidable, hence no floats anywhere in the symbolic engine.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_ZERO = Fraction(0)


class QQi:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "QQi":
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value))
        if isinstance(value, float):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            from .expr import parse_scalar

            return parse_scalar(value)
        raise TypeError(f"cannot convert {value!r} to an exact complex rational")

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QQi):
            other = QQi.coerce(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QQi):
            other = QQi.coerce(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, QQi):
            other = QQi.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return QQi(a * c, _ZERO)
        return QQi(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QQi.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero")
        return self * QQi(other.re / n, -other.im / n)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im) if self.im else self

    def __abs__(self) -> float:
        return abs(complex(self))

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparisons / conversion ----------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        try:
            other = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        from .expr import format_scalar

        return format_scalar(self)


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)
