from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from betaforge.cot_engine import cot_derivative_poly, eval_at_one
from betaforge.numeric_core import BallReal, factorial, pi_ball
from betaforge.series_eval import (
    QuarterPoint,
    _bernoulli_even,
    _cvz_weights,
    beta_partial_sum,
    beta_series,
    digamma_difference,
    odd_denominator_sum,
    polygamma_quarter,
    zeta_series,
)
from oracles import mp_beta, mp_in_ball, mp_psi, mp_zeta

Q1, Q3 = QuarterPoint.ONE_QUARTER, QuarterPoint.THREE_QUARTERS


def printed(value: str) -> BallReal:
    """Everything a truncated decimal could stand for."""
    v = Fraction(value)
    ulp = Fraction(1, 10 ** len(value.split(".")[1]))
    lo, hi = (v - ulp, v) if value.startswith("-") else (v, v + ulp)
    return BallReal.from_interval(lo, hi, 4 * len(value))


def test_trigamma_quarter_values():
    pi2 = pi_ball(128) ** 2
    catalan8 = beta_series(2, 128) * 8
    assert polygamma_quarter(1, Q1, 128).intersects(pi2 + catalan8)
    assert polygamma_quarter(1, Q3, 128).intersects(pi2 - catalan8)
    assert polygamma_quarter(1, Q1, 128).intersects(printed("17.1973"))
    assert polygamma_quarter(1, Q3, 128).intersects(printed("2.5418"))


def test_beta3_from_polygamma_difference():
    diff = polygamma_quarter(2, Q1, 128) - polygamma_quarter(2, Q3, 128)
    beta3 = -diff / (8 * 8 * 2)
    assert beta3.intersects(printed("0.968946146259"))


@pytest.mark.parametrize("k", [1, 2, 3, 7, 12, 29])
@pytest.mark.parametrize("x", list(QuarterPoint))
def test_polygamma_against_mpmath(k, x):
    assert mp_in_ball(polygamma_quarter(k, x, 200), mp_psi(k, x.value))


def test_polygamma_rejects_order_zero():
    with pytest.raises(ValueError):
        polygamma_quarter(0, Q1, 64)


def test_digamma_difference():
    d = digamma_difference(64)
    assert d.intersects(-pi_ball(64))
    assert d.intersects(printed("-3.14159265"))
    assert (-d / 4).intersects(printed("0.7853981"))


@pytest.mark.parametrize("s, value", [(2, "0.915965594177"), (4, "0.98894455174"), (5, "0.996157828077")])
def test_beta_series_published_values(s, value):
    assert beta_series(s, 128).intersects(printed(value))


@pytest.mark.parametrize("s", [1, 2, 3, 6, 11, 30])
def test_beta_series_against_mpmath(s):
    assert mp_in_ball(beta_series(s, 256), mp_beta(s))


def test_beta_rejects_nonpositive():
    with pytest.raises(ValueError):
        beta_series(0, 64)


def test_zeta_series_even_values():
    pi = pi_ball(128)
    assert zeta_series(2, 128).intersects(pi**2 / 6)
    assert zeta_series(4, 128).intersects(pi**4 / 90)


def test_zeta3_doubled_cutoff():
    a = zeta_series(3, 64, terms=200)
    b = zeta_series(3, 64, terms=400)
    full = zeta_series(3, 128)
    assert a.contains(b.midpoint) and a.intersects(b)
    assert b.contains(full.midpoint)
    assert full.intersects(printed("1.202056903"))


@pytest.mark.parametrize("s", [2, 3, 5, 12, 30])
def test_zeta_against_mpmath(s):
    assert mp_in_ball(zeta_series(s, 256), mp_zeta(s))


def test_zeta_rejects_divergent():
    for s in (1, 0):
        with pytest.raises(ValueError):
            zeta_series(s, 64)
        with pytest.raises(ValueError):
            odd_denominator_sum(s, 64)


def test_odd_denominator_sum_values():
    pi = pi_ball(128)
    assert odd_denominator_sum(2, 128).intersects(pi**2 / 8)
    assert odd_denominator_sum(4, 128).intersects(pi**4 / 96)


@pytest.mark.parametrize("s", range(2, 13))
def test_odd_sum_is_scaled_zeta(s):
    scaled = zeta_series(s, 128) * Fraction(2**s - 1, 2**s)
    assert odd_denominator_sum(s, 128).intersects(scaled)


@pytest.mark.parametrize("s", range(1, 9))
def test_odd_cot_derivative_matches_zeta(s):
    # pi^2s P_{2s-1}(1) = -(psi^(2s-1)(1/4) + psi^(2s-1)(3/4)) = -2^2s (2^2s - 1) (2s-1)! zeta(2s)
    n = 2 * s
    p = eval_at_one(cot_derivative_poly(n - 1))
    value = pi_ball(128) ** n * Fraction(-p, 2**n * (2**n - 1) * factorial(n - 1))
    assert zeta_series(n, 128).intersects(value)


# -- structural properties --------------------------------------------------


def _all_ops(s, precision):
    yield beta_series(s, precision)
    if s >= 2:
        yield zeta_series(s, precision)
        yield odd_denominator_sum(s, precision)
        yield polygamma_quarter(s - 1, Q1, precision)
        yield polygamma_quarter(s - 1, Q3, precision)
    else:
        yield digamma_difference(precision)


@pytest.mark.parametrize("p", [64, 128])
@pytest.mark.parametrize("s", range(1, 13))
def test_nested_refinement(p, s):
    for coarse, fine in zip(_all_ops(s, p), _all_ops(s, 2 * p)):
        assert coarse.contains(fine.midpoint)
        assert fine.radius < coarse.radius


plain_ops = {
    "beta": lambda s, n: beta_series(s, 64, terms=n),
    "zeta": lambda s, n: zeta_series(s, 64, terms=n),
    "odd": lambda s, n: odd_denominator_sum(s, 64, terms=n),
    "psi14": lambda s, n: polygamma_quarter(s - 1, Q1, 64, terms=n),
    "psi34": lambda s, n: polygamma_quarter(s - 1, Q3, 64, terms=n),
    "digamma": lambda s, n: digamma_difference(64, terms=n),
}


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(sorted(plain_ops)), st.integers(2, 12), st.integers(1, 60))
def test_tail_bound_honesty(op, s, n):
    a = plain_ops[op](s, n)
    b = plain_ops[op](s, 2 * n)
    assert a.intersects(b)
    assert b.radius < a.radius


@pytest.mark.parametrize("s", range(1, 13))
def test_alternating_partial_sums_bracket(s):
    mid = beta_series(s, 128).midpoint
    for n in range(1, 40):
        partial = beta_partial_sum(s, n)
        # odd counts end on a positive term and overshoot
        assert partial >= mid if n % 2 else partial <= mid


def test_bernoulli_numbers():
    assert _bernoulli_even(5) == (
        Fraction(1, 6),
        Fraction(-1, 30),
        Fraction(1, 42),
        Fraction(-1, 30),
        Fraction(5, 66),
    )
    assert list(_bernoulli_even(30)) == [Fraction(str(sympy.bernoulli(2 * k))) for k in range(1, 31)]


@pytest.mark.parametrize("r", [Fraction(0), Fraction(1, 3), Fraction(9, 10), Fraction(1)])
def test_chebyshev_weights_error_bound(r):
    # a_k = r^k are the moments of a point mass at r, summing to 1/(1+r)
    c, d = _cvz_weights(40)
    assert d >= 2**42
    approx = sum(ck * r**k for k, ck in enumerate(c)) / Fraction(d)
    assert abs(approx - 1 / (1 + r)) <= Fraction(1, d)
