"""Exact integers/rationals and fixed-point ball arithmetic.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are already arbitrary precision and canonical, so this module only adds
the ball type and a certified value of pi on top of them.

A :class:`BallReal` stores ``mid`` and ``rad`` as integers in units of
``2**-prec``.  Every operation returns a ball that contains all results of the
operation applied to points of its operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Integer = int
Rational = Fraction

GUARD_BITS = 32
MIN_PRECISION = 8

Scalar = Union[int, Fraction]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError(f"binomial({n}, {k}) needs non-negative arguments")
    if k > n:
        raise ValueError(f"binomial({n}, {k}) needs k <= n")
    return math.comb(n, k)


def _ceil_shift(x: int, d: int) -> int:
    """ceil(x / 2**d) for x >= 0."""
    return -((-x) >> d)


@dataclass(frozen=True)
class BallReal:
    """Real enclosure ``[mid - rad, mid + rad] * 2**-prec``."""

    mid: int
    rad: int
    prec: int

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("ball radius must be non-negative")
        if self.prec < 0:
            raise ValueError("ball precision must be non-negative")

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact(cls, n: int, prec: int) -> "BallReal":
        return cls(n << prec, 0, prec)

    @classmethod
    def from_rational(cls, q: Scalar, prec: int) -> "BallReal":
        q = Fraction(q)
        num = q.numerator << prec
        mid, rem = divmod(num, q.denominator)
        return cls(mid, 1 if rem else 0, prec)

    @classmethod
    def from_interval(cls, lo: Fraction, hi: Fraction, prec: int) -> "BallReal":
        """Smallest-ish ball at ``prec`` that covers ``[lo, hi]``."""
        if lo > hi:
            raise ValueError("empty interval")
        scale = 1 << prec
        lo_u = math.floor(Fraction(lo) * scale)
        hi_u = math.ceil(Fraction(hi) * scale)
        mid = (lo_u + hi_u) // 2
        return cls(mid, max(mid - lo_u, hi_u - mid), prec)

    # -- views --------------------------------------------------------------

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.mid, 1 << self.prec)

    @property
    def radius(self) -> Fraction:
        return Fraction(self.rad, 1 << self.prec)

    @property
    def lower(self) -> Fraction:
        return Fraction(self.mid - self.rad, 1 << self.prec)

    @property
    def upper(self) -> Fraction:
        return Fraction(self.mid + self.rad, 1 << self.prec)

    def is_exact(self) -> bool:
        return self.rad == 0

    def excludes_zero(self) -> bool:
        return abs(self.mid) > self.rad

    def contains(self, x) -> bool:
        if isinstance(x, BallReal):
            return self.lower <= x.lower and x.upper <= self.upper
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def intersects(self, other: "BallReal") -> bool:
        a, b = _align(self, other)
        return a.mid - a.rad <= b.mid + b.rad and b.mid - b.rad <= a.mid + a.rad

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return f"BallReal({float(self.midpoint)!r} +/- {float(self.radius):.3g}, prec={self.prec})"

    # -- precision changes --------------------------------------------------

    def with_prec(self, prec: int) -> "BallReal":
        if prec == self.prec:
            return self
        if prec > self.prec:
            d = prec - self.prec
            return BallReal(self.mid << d, self.rad << d, prec)
        d = self.prec - prec
        mid = self.mid >> d
        inexact = self.mid & ((1 << d) - 1)
        return BallReal(mid, _ceil_shift(self.rad, d) + (1 if inexact else 0), prec)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "BallReal":
        return BallReal(-self.mid, self.rad, self.prec)

    def __add__(self, other) -> "BallReal":
        if isinstance(other, (int, Fraction)):
            other = BallReal.from_rational(other, self.prec)
        if not isinstance(other, BallReal):
            return NotImplemented
        a, b = _align(self, other)
        return BallReal(a.mid + b.mid, a.rad + b.rad, a.prec)

    __radd__ = __add__

    def __sub__(self, other) -> "BallReal":
        if isinstance(other, (int, Fraction, BallReal)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> "BallReal":
        return (-self) + other

    def __mul__(self, other) -> "BallReal":
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return BallReal(self.mid * other, self.rad * abs(other), self.prec)
        if isinstance(other, Fraction):
            return (self * other.numerator) / other.denominator
        if not isinstance(other, BallReal):
            return NotImplemented
        a, b = _align(self, other)
        p = a.prec
        m = a.mid * b.mid
        r = abs(a.mid) * b.rad + abs(b.mid) * a.rad + a.rad * b.rad
        inexact = m & ((1 << p) - 1)
        return BallReal(m >> p, _ceil_shift(r, p) + (1 if inexact else 0), p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BallReal":
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("ball division by zero")
            n = abs(other)
            mid, rem = divmod(self.mid, n)
            if other < 0:
                mid, rem = divmod(-self.mid, n)
            rad = -((-self.rad) // n) + (1 if rem else 0)
            return BallReal(mid, rad, self.prec)
        if isinstance(other, Fraction):
            if other == 0:
                raise ZeroDivisionError("ball division by zero")
            return (self * other.denominator) / other.numerator
        if not isinstance(other, BallReal):
            return NotImplemented
        if not other.excludes_zero():
            raise ZeroDivisionError("divisor ball contains zero")
        a, b = _align(self, other)
        p = a.prec
        bm = abs(b.mid)
        num = a.mid << p
        if b.mid < 0:
            num = -num
        mid, rem = divmod(num, bm)
        err_num = (a.rad * bm + abs(a.mid) * b.rad) << p
        err_den = bm * (bm - b.rad)
        rad = -((-err_num) // err_den) + (1 if rem else 0)
        return BallReal(mid, rad, p)

    def __rtruediv__(self, other) -> "BallReal":
        if isinstance(other, (int, Fraction)):
            return BallReal.from_rational(other, self.prec) / self
        return NotImplemented

    def __pow__(self, n) -> "BallReal":
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            return 1 / (self**-n)
        result = BallReal.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- decimal output -----------------------------------------------------

    def certified_digits(self, max_digits: int) -> tuple[str, int]:
        """Truncated decimal string whose every digit holds across the ball.

        Returns ``(text, digits)``; ``digits`` may be smaller than
        ``max_digits`` when the radius cannot justify them.
        """
        lo, hi, mid = self.lower, self.upper, self.midpoint
        for d in range(max(max_digits, 0), -1, -1):
            if truncate_decimal(lo, d) == truncate_decimal(hi, d):
                return truncate_decimal(mid, d), d
        return truncate_decimal(mid, 0), 0


def _align(a: BallReal, b: BallReal) -> tuple[BallReal, BallReal]:
    if a.prec == b.prec:
        return a, b
    p = max(a.prec, b.prec)
    return a.with_prec(p), b.with_prec(p)


def truncate_decimal(x: Fraction, digits: int) -> str:
    """Decimal text of ``x`` truncated toward zero after ``digits`` places."""
    x = Fraction(x)
    t = int(abs(x) * 10**digits)
    sign = "-" if x < 0 and t else ""
    whole, frac = divmod(t, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def dyadic_to_decimal(mid: int, prec: int) -> str:
    """Exact decimal expansion of ``mid / 2**prec``."""
    if prec == 0:
        return str(mid)
    sign = "-" if mid < 0 else ""
    scaled = abs(mid) * 5**prec
    whole, frac = divmod(scaled, 10**prec)
    frac_s = f"{frac:0{prec}d}".rstrip("0")
    return f"{sign}{whole}.{frac_s}" if frac_s else f"{sign}{whole}"


def decimal_to_dyadic(text: str, prec: int) -> int:
    """Inverse of :func:`dyadic_to_decimal`; raises if not exact at ``prec``."""
    q = Fraction(text) * (1 << prec)
    if q.denominator != 1:
        raise ValueError(f"{text!r} is not a multiple of 2**-{prec}")
    return q.numerator


# module-level aliases for the operation names used across the package
def ball_add(a: BallReal, b) -> BallReal:
    return a + b


def ball_mul(a: BallReal, b) -> BallReal:
    return a * b


def ball_div(a: BallReal, b) -> BallReal:
    return a / b


def ball_pow_int(a: BallReal, n: int) -> BallReal:
    return a**n


def rational_to_ball(q: Scalar, precision: int) -> BallReal:
    return BallReal.from_rational(q, precision)


def _arctan_inv(x: int, bits: int) -> tuple[int, int]:
    # alternating series sum_k (-1)^k / ((2k+1) x^(2k+1)); every term is
    # floored (error < 1 ulp) and the first omitted term is < 1 ulp
    total = 0
    power = (1 << bits) // x
    x2 = x * x
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= x2
        k += 1
    return total, k + 1


@lru_cache(maxsize=64)
def pi_ball(precision: int) -> BallReal:
    """Enclosure of pi from Machin's formula, radius far below 2**-precision."""
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}, got {precision}")
    bits = precision + GUARD_BITS
    a5, r5 = _arctan_inv(5, bits)
    a239, r239 = _arctan_inv(239, bits)
    return BallReal(16 * a5 - 4 * a239, 16 * r5 + 4 * r239, bits)


@dataclass(frozen=True)
class PiForm:
    """Exact value ``coeff * pi**power``."""

    coeff: Fraction
    power: int

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.power < 0:
            raise ValueError("pi exponent must be non-negative")

    def to_ball(self, precision: int) -> BallReal:
        bits = precision + GUARD_BITS
        return BallReal.from_rational(self.coeff, bits) * pi_ball(precision) ** self.power

    def __str__(self) -> str:
        c = self.coeff
        return f"{c.numerator}/{c.denominator} * pi^{self.power}"
