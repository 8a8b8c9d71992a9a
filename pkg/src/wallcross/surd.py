"""Exact arithmetic in Q(sqrt(d)) for a fixed positive rational radicand."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def rational_sqrt(x) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _square_part(n: int) -> tuple[int, int]:
    """Split ``n = k^2 * m`` with ``m`` squarefree."""
    k, m = 1, n
    p = 2
    while p * p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        if m % p == 0:
            m //= p
            rest_k, rest_m = _square_part(m)
            return k * rest_k, p * rest_m
        p += 1
    # m has at most two prime factors left, all larger than cbrt(m)
    r = math.isqrt(m)
    if r > 1 and r * r == m:
        return k * r, 1
    return k, m


@dataclass(frozen=True)
class Surd:
    """The number ``rational + coeff * sqrt(radicand)``."""

    rational: Fraction
    coeff: Fraction
    radicand: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.radicand <= 0:
            raise ValueError("radicand must be positive")
        d = self.radicand
        # sqrt(p/q) = sqrt(p*q)/q, then pull squares out
        k, m = _square_part(d.numerator * d.denominator)
        object.__setattr__(self, "coeff", self.coeff * k / d.denominator)
        object.__setattr__(self, "radicand", Fraction(m))

    @classmethod
    def sqrt(cls, d) -> "Surd | Fraction":
        r = rational_sqrt(d)
        if r is not None:
            return r
        return cls(Fraction(0), Fraction(1), Fraction(d))

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.radicand != self.radicand:
                raise ValueError("mixed radicands")
            return other
        if isinstance(other, (int, Rational)):
            return Surd(Fraction(other), Fraction(0), self.radicand)
        return NotImplemented

    def _simplify(self):
        if self.coeff == 0:
            return self.rational
        if self.radicand == 1:
            return self.rational + self.coeff
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Surd(self.rational + o.rational, self.coeff + o.coeff, self.radicand)._simplify()

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rational, -self.coeff, self.radicand)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.radicand
        return Surd(self.rational * o.rational + self.coeff * o.coeff * d,
                    self.rational * o.coeff + self.coeff * o.rational, d)._simplify()

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.rational, -self.coeff, self.radicand)

    def norm(self) -> Fraction:
        return self.rational ** 2 - self.coeff ** 2 * self.radicand

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        if isinstance(num, Fraction):
            return num / n
        return Surd(num.rational / n, num.coeff / n, self.radicand)._simplify()

    def __rtruediv__(self, other):
        return Surd(Fraction(other), 0, self.radicand) / self

    def sign(self) -> int:
        # sign of x + y sqrt(d) compared exactly via squares
        x, y, d = self.rational, self.coeff, self.radicand
        if y == 0:
            return (x > 0) - (x < 0)
        if x == 0:
            return (y > 0) - (y < 0)
        if (x > 0) == (y > 0):
            return 1 if x > 0 else -1
        # opposite signs: compare x^2 with y^2 d
        big = x * x - y * y * d
        s = 1 if big > 0 else -1
        return s if x > 0 else -s

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.rational, self.coeff, self.radicand) == (other.rational, other.coeff, other.radicand)
        if isinstance(other, (int, Rational)):
            return self.coeff == 0 and self.rational == other
        return NotImplemented

    def __hash__(self):
        return hash((self.rational, self.coeff, self.radicand))

    def __float__(self):
        return float(self.rational) + float(self.coeff) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"Surd({self.rational} + {self.coeff}*sqrt({self.radicand}))"

    def __str__(self):
        return f"{self.rational} + {self.coeff}*sqrt({self.radicand})"


def sign(x) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)
