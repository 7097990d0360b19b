"""Exact-or-scaled scalars for eigenvalue families that live near ``2**-n``.

A :class:`Scaled` value is ``mantissa * 2**exponent``. The mantissa is a
``float`` or, when the caller works with exact probabilities, a
``fractions.Fraction``; arithmetic stays exact in the latter case. Keeping the
binary exponent separate lets ``(1 - p) / 2**n`` be represented for ``n`` in
the thousands, where the plain double underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Real = Union[float, Fraction]


def ldexp(x: Real, k: int) -> Real:
    """``x * 2**k``, exact for fractions."""
    if isinstance(x, Fraction):
        return x * Fraction(2) ** k
    return math.ldexp(x, k)


def _frexp_exponent(x: Real) -> int:
    if x == 0:
        return 0
    if isinstance(x, Fraction):
        # floor(log2|x|) + 1, like math.frexp.
        num, den = abs(x.numerator), x.denominator
        e = num.bit_length() - den.bit_length()
        if Fraction(num, den) >= Fraction(2) ** e:
            e += 1
        return e
    return math.frexp(x)[1]


@dataclass(frozen=True)
class Scaled:
    mantissa: Real
    exponent: int = 0

    @classmethod
    def affine(cls, a: Real, b: Real, k: int) -> "Scaled":
        """Represent ``a + b * 2**-k`` without overflow or premature underflow."""
        if b == 0:
            return cls(a, 0)
        if a == 0:
            return cls(b, -k)
        e = max(_frexp_exponent(a), _frexp_exponent(b) - k)
        return cls(ldexp(a, -e) + ldexp(b, -k - e), e)

    def __float__(self) -> float:
        return float(ldexp(self.mantissa, self.exponent))

    @property
    def exact(self) -> Optional[Fraction]:
        if isinstance(self.mantissa, Fraction):
            return ldexp(self.mantissa, self.exponent)
        return None

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def log2(self) -> float:
        if self.mantissa <= 0:
            raise ValueError("log2 of a non-positive value")
        return math.log2(self.mantissa) + self.exponent

    def __neg__(self) -> "Scaled":
        return Scaled(-self.mantissa, self.exponent)


@dataclass(frozen=True)
class Multiplicity:
    """Integer ``2**power + offset`` kept symbolic (``power=None`` means no power term)."""

    power: Optional[int]
    offset: int = 0

    @property
    def exact(self) -> int:
        return (0 if self.power is None else 1 << self.power) + self.offset

    def weight(self, value: Scaled) -> Real:
        """``multiplicity * value`` without materializing either factor."""
        total = ldexp(value.mantissa, value.exponent) * self.offset
        if self.power is not None:
            total += ldexp(value.mantissa, value.exponent + self.power)
        return total

    def __str__(self) -> str:
        if self.power is None:
            return str(self.offset)
        if self.offset == 0:
            return f"2^{self.power}"
        sign = "+" if self.offset > 0 else "-"
        return f"2^{self.power}{sign}{abs(self.offset)}"
