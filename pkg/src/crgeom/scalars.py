"""Exact Gaussian-rational scalars.

All series coefficients in this package are Gaussian rationals: numbers
a + b*i with a, b in Q, stored as a pair of ``fractions.Fraction``.
Arithmetic never rounds; Fraction keeps denominators positive and
fractions reduced, which gives a canonical representation for free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


class GaussRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def of(x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussRational")

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = GaussRational.of(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRational.of(other))

    def __rsub__(self, other):
        return GaussRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussRational.of(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRational.of(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussRational")
        return GaussRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return GaussRational.of(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GaussRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRational(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- conversion / formatting ----------------------------------------------

    def __complex__(self):
        return complex(self.re, self.im)

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_coefficient(self)


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def _frac_str(f: Fraction) -> str:
    return str(f)  # "p/q" or "p"


def format_coefficient(c: GaussRational) -> str:
    """Canonical literal form: ``3/2``, ``i``, ``-2*i``, ``(1/2+1/3*i)``."""
    if c.im == 0:
        return _frac_str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_str(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    imabs = abs(im)
    impart = "i" if imabs == 1 else f"{_frac_str(imabs)}*i"
    return f"({_frac_str(c.re)}{sign}{impart})"
