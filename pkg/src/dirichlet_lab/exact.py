"""Exact arithmetic over rationals and real quadratic irrationals.

Values of the form (a + b*sqrt(d))/c with integer a, b, c and non-square
d are closed under the field operations, so tails of eventually periodic
continued fractions can be manipulated and compared without any rounding.
All comparisons reduce to integer sign tests.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ExactReal = Union[Fraction, "Quad"]


def _sqrt_if_square(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def make_quad(a: int, b: int, c: int, d: int) -> ExactReal:
    """Build (a + b*sqrt(d))/c, collapsing to a Fraction when the value is rational."""
    if c == 0:
        raise ZeroDivisionError("zero denominator in quadratic value")
    if d < 0:
        raise ValueError("negative radicand")
    r = _sqrt_if_square(d)
    if r is not None:
        return Fraction(a + b * r, c)
    if b == 0:
        return Fraction(a, c)
    return Quad(a, b, c, d)


class Quad:
    """Irrational (a + b*sqrt(d))/c in canonical form: gcd(a,b,c)=1, c>0, b!=0."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *_):
        raise AttributeError("Quad is immutable")

    # -- arithmetic (closed in Q(sqrt(d)); rational operands only) --

    def _coerce(self, other) -> Fraction:
        if isinstance(other, int):
            return Fraction(other)
        if isinstance(other, Fraction):
            return other
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise ValueError("mixed radicands")
            return make_quad(
                self.a * other.c + other.a * self.c,
                self.b * other.c + other.b * self.c,
                self.c * other.c,
                self.d,
            )
        r = self._coerce(other)
        return make_quad(
            self.a * r.denominator + r.numerator * self.c,
            self.b * r.denominator,
            self.c * r.denominator,
            self.d,
        )

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Quad) else -self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        if isinstance(other, Quad):
            if other.d != self.d:
                raise ValueError("mixed radicands")
            return make_quad(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.c * other.c,
                self.d,
            )
        r = self._coerce(other)
        return make_quad(self.a * r.numerator, self.b * r.numerator,
                         self.c * r.denominator, self.d)

    __rmul__ = __mul__

    def reciprocal(self) -> "Quad":
        # c/(a+b*sqrt(d)) rationalized by the conjugate; norm is nonzero since
        # the value is irrational.
        norm = self.a * self.a - self.b * self.b * self.d
        return Quad(self.c * self.a, -self.c * self.b, norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, Quad):
            return self * other.reciprocal()
        r = self._coerce(other)
        return make_quad(self.a * r.denominator, self.b * r.denominator,
                         self.c * r.numerator, self.d)

    def __rtruediv__(self, other):
        return self.reciprocal() * self._coerce(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        result: ExactReal = Fraction(1)
        base: ExactReal = self
        while n:
            if n & 1:
                result = base * result if isinstance(base, Quad) else result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- exact sign and ordering --

    def sign(self) -> int:
        """Exact sign of (a + b*sqrt(d))/c (c > 0 after normalization)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2*d
        lhs, rhs = a * a, b * b * self.d
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return 1 if lhs < rhs else -1  # a < 0, b > 0

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # canonical Quad is irrational
        if isinstance(other, Quad):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __repr__(self):
        return f"({self.a}{self.b:+d}*sqrt({self.d}))/{self.c}"


def exact_sign(v: ExactReal) -> int:
    if isinstance(v, Quad):
        return v.sign()
    return (v > 0) - (v < 0)


def exact_abs(v: ExactReal) -> ExactReal:
    return -v if exact_sign(v) < 0 else v


def exact_pow(v: ExactReal, n: int) -> ExactReal:
    return v ** n


def exact_float(v: ExactReal) -> float:
    return float(v)


def cmp_exact(lhs: ExactReal, rhs: ExactReal) -> int:
    """Sign of lhs - rhs; operands must live in a common field."""
    if isinstance(lhs, Quad) or isinstance(rhs, Quad):
        diff = lhs - rhs
        return exact_sign(diff)
    return (lhs > rhs) - (lhs < rhs)


def cmp_scaled_power(value: ExactReal, coef: Fraction, base: int, exp: Fraction) -> int:
    """Exact sign of value - coef * base**exp for rational exp and base >= 1.

    Clears the fractional power by raising both sides to the exponent's
    denominator, which keeps everything inside Z[sqrt(d)].
    """
    if base < 1:
        raise ValueError("base must be >= 1")
    if coef == 0:
        return exact_sign(value)
    u, v = exp.numerator, exp.denominator
    # base**exp > 0 always; handle signs first
    sv = exact_sign(value)
    sc = 1 if coef > 0 else -1
    if sc > 0 and sv <= 0:
        return -1
    if sc < 0 and sv >= 0:
        return 1
    # both sides share a sign; compare |value|^v against |coef|^v * base^u
    lhs = exact_pow(exact_abs(value), v)
    if u >= 0:
        rhs = Fraction(abs(coef)) ** v * (base ** u)
        c = cmp_exact(lhs, rhs)
    else:
        # multiply through by base^{-u} to stay integral
        c = cmp_exact(lhs * (base ** (-u)), Fraction(abs(coef)) ** v)
    return c if sv > 0 else -c
