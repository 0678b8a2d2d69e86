"""Exact arithmetic in Q(sqrt 5), enough for character values at orders 1, 2, 3, 5."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class GoldenNumber:
    """a + b*sqrt(5) with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GoldenNumber":
        if isinstance(value, GoldenNumber):
            return value
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other):
        o = GoldenNumber.of(other)
        return GoldenNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GoldenNumber.of(other))

    def __rsub__(self, other):
        return GoldenNumber.of(other) - self

    def __mul__(self, other):
        o = GoldenNumber.of(other)
        return GoldenNumber(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GoldenNumber.of(other)
        norm = o.a * o.a - 5 * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 5)")
        conj = GoldenNumber(o.a / norm, -o.b / norm)
        return self * conj

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GoldenNumber.of(other)
        if not isinstance(other, GoldenNumber):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return int(self.a)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}√5"


SQRT5 = GoldenNumber(Fraction(0), Fraction(1))


def two_cos_2pi_over5(k: int) -> GoldenNumber:
    """2cos(2*pi*k/5) exactly: 2 for k = 0 mod 5, (-1+-sqrt5)/2 otherwise."""
    k %= 5
    if k == 0:
        return GoldenNumber.of(2)
    if k in (1, 4):
        return GoldenNumber(Fraction(-1, 2), Fraction(1, 2))
    return GoldenNumber(Fraction(-1, 2), Fraction(-1, 2))


def two_cos_2pi_over3(k: int) -> int:
    return 2 if k % 3 == 0 else -1
