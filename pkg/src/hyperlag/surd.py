"""Exact arithmetic in Q[sqrt(3)]: numbers p + q*sqrt(3) with rational p, q."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt


@total_ordering
class QSqrt3:
    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        self.p = Fraction(p)
        self.q = Fraction(q)

    @staticmethod
    def _lift(other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt3(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.p, -self.q)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.p * o.p + 3 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt3:
        return QSqrt3(self.p, -self.q)

    def norm(self) -> Fraction:
        return self.p * self.p - 3 * self.q * self.q

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q[sqrt(3)]")
        num = self * o.conjugate()
        return QSqrt3(num.p / nrm, num.q / nrm)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        out = QSqrt3(1)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        """Sign of p + q*sqrt(3), decided exactly by comparing p^2 with 3q^2."""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        # opposite signs: the larger square wins
        diff = self.p * self.p - 3 * self.q * self.q
        return sp if diff > 0 else sq if diff < 0 else 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.p == o.p and self.q == o.q

    def __lt__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __hash__(self):
        return hash((self.p, self.q))

    def __float__(self):
        return float(self.p) + float(self.q) * 3**0.5

    def __repr__(self):
        return f"QSqrt3({self.p}, {self.q})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        return f"{self.p} + {self.q}*sqrt(3)" if self.p else f"{self.q}*sqrt(3)"


SQRT3 = QSqrt3(0, 1)


def quadratic_roots(a, b, c) -> tuple[QSqrt3, QSqrt3]:
    """Roots of a x^2 + b x + c over Q[sqrt(3)], smaller first.

    The discriminant must be d^2 * 3 or d^2 for rational d; anything else
    lies outside the field.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    disc = b * b - 4 * a * c
    root = _rational_sqrt(disc)
    if root is not None:
        r = QSqrt3(root)
    else:
        s = _rational_sqrt(disc / 3)
        if s is None:
            raise ValueError(f"discriminant {disc} is not in Q[sqrt(3)]^2")
        r = QSqrt3(0, s)
    lo, hi = (-b - r) / (2 * a), (-b + r) / (2 * a)
    return (lo, hi) if lo <= hi else (hi, lo)


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None
