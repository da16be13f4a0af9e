"""Certified evaluation of the defining series at rational shifts 1/4, 1/2, 3/4, 1.

Two summation engines, deliberately unrelated to each other:

* Hurwitz-type sums ``sum_{n>=0} (n + x)^-s`` (polygamma values, the odd
  denominator sum) use a head of explicit terms plus an Euler-Maclaurin tail
  whose remainder is bounded by ``|B_2M| / (2M)! * |f^(2M-1)(N)|``.
* Alternating sums (beta, and zeta through the eta function) use the
  Cohen-Villegas-Zagier Chebyshev weights, exact in integers, with error at
  most ``a_0 / T_n(3)``.

Passing ``terms=N`` to any public function switches to plain truncated
summation with the elementary tail bound instead; that mode exists so the
tail bounds themselves can be tested.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .numeric_core import GUARD_BITS, MIN_PRECISION, BallReal, factorial


class QuarterPoint(enum.Enum):
    ONE_QUARTER = Fraction(1, 4)
    THREE_QUARTERS = Fraction(3, 4)


def _bits(precision: int) -> int:
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION}, got {precision}")
    return precision + GUARD_BITS


def _floor_units(q: Fraction, bits: int) -> tuple[int, bool]:
    u, rem = divmod(q.numerator << bits, q.denominator)
    return u, bool(rem)


def _ceil_units(q: Fraction, bits: int) -> int:
    return -((-(q.numerator << bits)) // q.denominator)


# -- Bernoulli numbers (tangent-number algorithm, integers only) ------------


@lru_cache(maxsize=None)
def _bernoulli_even(m: int) -> tuple[Fraction, ...]:
    """``(B_2, B_4, ..., B_2m)``."""
    t = [0] * (m + 1)
    if m >= 1:
        t[1] = 1
    for k in range(2, m + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, m + 1):
        for j in range(k, m + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    out = []
    for k in range(1, m + 1):
        b = Fraction(2 * k * t[k], 4**k * (4**k - 1))
        out.append(b if k & 1 else -b)
    return tuple(out)


# -- Hurwitz-type sums ------------------------------------------------------


def _rising(s: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= s + i
    return out


def _head(weights: Mapping[Fraction, Fraction], s: int, n_terms: int, bits: int) -> tuple[int, int]:
    """Units and error (ulps) of ``sum_{n<N} sum_i w_i (n + x_i)^-s``."""
    total = 0
    err = 0
    for x, w in weights.items():
        p, q = x.numerator, x.denominator
        num = w.numerator * q**s << bits
        den_w = w.denominator
        for n in range(n_terms):
            u, rem = divmod(num, den_w * (q * n + p) ** s)
            total += u
            err += 1 if rem else 0
    return total, err


def _derivative_at(weights, s: int, m: int, t: Fraction) -> Fraction:
    """m-th derivative of ``sum_i w_i (t + x_i)^-s`` at ``t``."""
    c = _rising(s, m) * (-1 if m & 1 else 1)
    return sum((w * c / (t + x) ** (s + m) for x, w in weights.items()), Fraction(0))


def _em_tail(weights, s: int, n_start: int, order: int) -> tuple[Fraction, Fraction]:
    """Euler-Maclaurin tail without the integral term, and its remainder bound.

    The bound is valid only when the 2M-th derivative of the summand keeps
    one sign on ``[N, oo)``; callers guarantee that.
    """
    t = Fraction(n_start)
    bern = _bernoulli_even(order)
    value = _derivative_at(weights, s, 0, t) / 2
    for j in range(1, order + 1):
        value -= bern[j - 1] / math.factorial(2 * j) * _derivative_at(weights, s, 2 * j - 1, t)
    bound = abs(bern[order - 1]) / math.factorial(2 * order) * abs(
        _derivative_at(weights, s, 2 * order - 1, t)
    )
    return value, bound


def _choose_cutoff(weights, s: int, bits: int) -> tuple[int, Fraction, Fraction]:
    target = Fraction(1, 1 << (bits + 2))
    n = max(bits // 6 + s + 4, 2)
    while True:
        value, bound = _em_tail(weights, s, n, n)
        if bound <= target:
            return n, value, bound
        n += n // 4 + 1


def _power_integral(weights, s: int, t: Fraction) -> Fraction:
    # int_t^oo sum_i w_i (u + x_i)^-s du, s >= 2
    return sum((w / ((s - 1) * (t + x) ** (s - 1)) for x, w in weights.items()), Fraction(0))


@lru_cache(maxsize=512)
def _hurwitz(s: int, x: Fraction, bits: int, terms: Optional[int] = None) -> BallReal:
    """Ball for ``sum_{n>=0} (n + x)^-s`` with ``s >= 2``, ``x > 0``."""
    weights = {x: Fraction(1)}
    if terms is None:
        n, tail, bound = _choose_cutoff(weights, s, bits)
        head, err = _head(weights, s, n, bits)
        rest, inexact = _floor_units(_power_integral(weights, s, Fraction(n)) + tail, bits)
        rad = err + (1 if inexact else 0) + _ceil_units(bound, bits)
        return BallReal(head + rest, rad, bits)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    head, err = _head(weights, s, terms, bits)
    # integral test: the tail lies between the integrals from N and from N-1
    lo = _power_integral(weights, s, Fraction(terms))
    hi = _power_integral(weights, s, Fraction(terms - 1))
    tail = BallReal.from_interval(lo, hi, bits)
    return BallReal(head, err, bits) + tail


def _atanh_inv(m: int, bits: int) -> BallReal:
    # sum_k 1 / ((2k+1) m^(2k+1)); positive terms, geometric tail < 2 ulps for m >= 2
    total = 0
    power = (1 << bits) // m
    m2 = m * m
    k = 0
    while power:
        total += power // (2 * k + 1)
        power //= m2
        k += 1
    return BallReal(total, k + 2, bits)


def _digamma_weights():
    return {Fraction(1, 4): Fraction(2), Fraction(3, 4): Fraction(-2)}


def _log_integral(n: int, bits: int) -> BallReal:
    # int_n^oo 1/((u+1/4)(u+3/4)) du = 2 ln((n+3/4)/(n+1/4)) = 4 atanh(1/(4n+2))
    return _atanh_inv(4 * n + 2, bits) * 4


@lru_cache(maxsize=64)
def _digamma_pair_sum(bits: int, terms: Optional[int] = None) -> BallReal:
    """Ball for ``sum_{n>=0} 1 / ((n + 1/4)(n + 3/4))``."""
    weights = _digamma_weights()
    if terms is None:
        target = Fraction(1, 1 << (bits + 2))
        n = max(bits // 6 + 4, 2)
        while True:
            tail, bound = _em_tail(weights, 1, n, n)
            if bound <= target:
                break
            n += n // 4 + 1
        head, err = _head(weights, 1, n, bits)
        rest, inexact = _floor_units(tail, bits)
        rad = err + (1 if inexact else 0) + _ceil_units(bound, bits)
        return BallReal(head + rest, rad, bits) + _log_integral(n, bits)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    head, err = _head(weights, 1, terms, bits)
    # the summand decreases, so the tail lies between the integrals from N and N-1
    lo = _log_integral(terms, bits)
    hi = _log_integral(terms - 1, bits)
    tail = BallReal.from_interval(lo.lower, hi.upper, bits)
    return BallReal(head, err, bits) + tail


# -- alternating sums -------------------------------------------------------


@lru_cache(maxsize=64)
def _cvz_weights(bits: int) -> tuple[tuple[int, ...], int]:
    """Integer weights ``c_k`` and divisor ``d = T_n(3)`` with ``d >= 2**(bits+2)``.

    ``sum_k c_k a_k / d`` approximates ``sum_k (-1)^k a_k`` with error at most
    ``a_0 / d`` whenever ``a_k`` are moments of a positive measure on [0, 1].
    """
    t_prev, t_cur, n = 1, 3, 1
    while t_cur < 1 << (bits + 2):
        t_prev, t_cur, n = t_cur, 6 * t_cur - t_prev, n + 1
    # coefficients of T_n(1 - 2x) in powers of x
    p = []
    for j in range(n + 1):
        num = n * math.comb(n + j, 2 * j) * 4**j
        q, r = divmod(num, n + j)
        assert r == 0
        p.append(-q if j & 1 else q)
    c = [0] * n
    u = 0
    for k in range(n - 1, -1, -1):
        u = p[k + 1] - u
        c[k] = -u
    return tuple(c), t_cur


def _alternating(step: int, start: int, s: int, bits: int) -> BallReal:
    """Ball for ``sum_{k>=0} (-1)^k / (step*k + start)^s`` with start >= 1."""
    c, d = _cvz_weights(bits)
    acc = 0
    for k, ck in enumerate(c):
        acc += (ck << bits) // (step * k + start) ** s
    n = len(c)
    mid, rem = divmod(acc, d)
    rad = -(-n // d) + (1 if rem else 0) + -(-(1 << bits) // d)
    return BallReal(mid, rad, bits)


def beta_partial_sum(s: int, n: int) -> Fraction:
    """Exact ``sum_{k<n} (-1)^k / (2k+1)^s``."""
    return sum((Fraction(-1 if k & 1 else 1, (2 * k + 1) ** s) for k in range(n)), Fraction(0))


# -- public operations ------------------------------------------------------


def polygamma_quarter(k: int, x: QuarterPoint, precision: int, terms: Optional[int] = None) -> BallReal:
    """psi^(k)(x) = (-1)^(k+1) k! sum_{n>=0} (n + x)^-(k+1), for x in {1/4, 3/4}."""
    if k < 1:
        raise ValueError(f"polygamma order must be >= 1, got {k}; use digamma_difference for k = 0")
    x = QuarterPoint(x)
    ball = _hurwitz(k + 1, x.value, _bits(precision), terms) * factorial(k)
    return ball if k & 1 else -ball


def digamma_difference(precision: int, terms: Optional[int] = None) -> BallReal:
    """psi(1/4) - psi(3/4), from -1/2 * sum 1/((n+1/4)(n+3/4))."""
    return -(_digamma_pair_sum(_bits(precision), terms) / 2)


def beta_series(s: int, precision: int, terms: Optional[int] = None) -> BallReal:
    if s < 1:
        raise ValueError(f"beta series needs s >= 1, got {s}")
    bits = _bits(precision)
    if terms is None:
        return _alternating(2, 1, s, bits)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    partial = beta_partial_sum(s, terms)
    first_omitted = Fraction(-1 if terms & 1 else 1, (2 * terms + 1) ** s)
    lo, hi = sorted((partial, partial + first_omitted))
    return BallReal.from_interval(lo, hi, bits)


def zeta_series(s: int, precision: int, terms: Optional[int] = None) -> BallReal:
    if s < 2:
        raise ValueError(f"zeta series diverges for s = {s}; need s >= 2")
    bits = _bits(precision)
    if terms is not None:
        return _hurwitz(s, Fraction(1), bits, terms)
    # zeta(s) = eta(s) / (1 - 2^(1-s))
    eta = _alternating(1, 1, s, bits)
    return eta * Fraction(2 ** (s - 1), 2 ** (s - 1) - 1)


def odd_denominator_sum(s: int, precision: int, terms: Optional[int] = None) -> BallReal:
    """sum_{k>=1} (2k-1)^-s = 2^-s * sum_{n>=0} (n + 1/2)^-s."""
    if s < 2:
        raise ValueError(f"odd-denominator sum diverges for s = {s}; need s >= 2")
    return _hurwitz(s, Fraction(1, 2), _bits(precision), terms) / 2**s
