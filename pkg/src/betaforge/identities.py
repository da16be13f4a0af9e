"""Each beta/zeta/Euler identity as its own route, plus the cross-check harness.

Every numeric route returns a :class:`BallReal`; the exact routes go through
the cot-derivative polynomials and return :class:`PiForm` or integers.
:func:`verify_all` pairs routes up and records whether their enclosures meet.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cot_engine import cot_derivative_poly, eval_at_one
from .numeric_core import (
    GUARD_BITS,
    BallReal,
    PiForm,
    binomial,
    decimal_to_dyadic,
    dyadic_to_decimal,
    factorial,
    pi_ball,
)
from .series_eval import (
    QuarterPoint,
    beta_series,
    digamma_difference,
    odd_denominator_sum,
    polygamma_quarter,
    zeta_series,
)

Q1 = QuarterPoint.ONE_QUARTER
Q3 = QuarterPoint.THREE_QUARTERS


def _sign(n: int) -> int:
    return -1 if n & 1 else 1


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class EulerNumber:
    index: int
    value: int

    def __post_init__(self):
        _require(self.index >= 0 and self.index % 2 == 0, f"Euler index must be even and >= 0, got {self.index}")
        if self.value == 0 or (self.value > 0) != (_sign(self.index // 2) > 0):
            raise ValueError(f"E_{self.index} = {self.value} has the wrong sign")
        if self.index >= 2 and self.value % 2 == 0:
            raise ValueError(f"E_{self.index} = {self.value} should be odd")

    def __int__(self) -> int:
        return self.value


# -- numeric routes ---------------------------------------------------------


def zeta_via_polygamma(s: int, precision: int) -> BallReal:
    _require(s >= 2, f"zeta via polygamma needs s >= 2, got {s}")
    total = polygamma_quarter(s - 1, Q1, precision) + polygamma_quarter(s - 1, Q3, precision)
    return total * _sign(s) / (2**s * (2**s - 1) * factorial(s - 1))


def beta_via_polygamma(s: int, precision: int) -> BallReal:
    _require(s >= 1, f"beta via polygamma needs s >= 1, got {s}")
    if s == 1:
        diff = digamma_difference(precision)
    else:
        diff = polygamma_quarter(s - 1, Q1, precision) - polygamma_quarter(s - 1, Q3, precision)
    return diff * _sign(s) / (4**s * factorial(s - 1))


def _psi_three_quarter_term(s: int, precision: int) -> BallReal:
    # (-1)^s * 2 / (2^s 2^s) / Gamma(s) * psi^(s-1)(3/4)
    return polygamma_quarter(s - 1, Q3, precision) * Fraction(2 * _sign(s), 4**s * factorial(s - 1))


def beta_via_zeta_correction(s: int, precision: int) -> BallReal:
    _require(s >= 2, f"beta via zeta needs s >= 2, got {s}")
    odd = zeta_series(s, precision) * Fraction(2**s - 1, 2**s)
    return odd - _psi_three_quarter_term(s, precision)


def beta_via_substitution(s: int, precision: int) -> BallReal:
    """The zeta correction route with zeta itself replaced by its polygamma form."""
    _require(s >= 2, f"beta via substitution needs s >= 2, got {s}")
    odd = zeta_via_polygamma(s, precision) * Fraction(2**s - 1, 2**s)
    return odd - _psi_three_quarter_term(s, precision)


def zeta_via_beta(s: int, precision: int) -> BallReal:
    _require(s >= 2, f"zeta via beta needs s >= 2, got {s}")
    lead = beta_series(s, precision) * Fraction(2**s, 2**s - 1)
    psi = polygamma_quarter(s - 1, Q3, precision) * Fraction(2, 2**s * (2**s - 1) * factorial(s - 1))
    # even s adds the psi term, odd s subtracts it
    return lead + psi if s % 2 == 0 else lead - psi


def euler_via_polygamma(two_s: int, precision: int) -> BallReal:
    """E_2s = -(psi^(2s)(1/4) - psi^(2s)(3/4)) * 2 (-1)^s / (2 pi)^(2s+1)."""
    _check_euler_index(two_s)
    if two_s == 0:
        diff = digamma_difference(precision)
    else:
        diff = polygamma_quarter(two_s, Q1, precision) - polygamma_quarter(two_s, Q3, precision)
    scale = (pi_ball(precision) * 2) ** (two_s + 1)
    return -diff * (2 * _sign(two_s // 2)) / scale


def euler_via_beta_series(two_s: int, precision: int) -> BallReal:
    """E_2s = (-1)^s 2^(2s+2) (2s)! beta(2s+1) / pi^(2s+1), using the beta series."""
    _check_euler_index(two_s)
    beta = beta_series(two_s + 1, precision)
    return beta * (_sign(two_s // 2) * 2 ** (two_s + 2) * factorial(two_s)) / pi_ball(precision) ** (two_s + 1)


# -- exact routes -----------------------------------------------------------


def beta_odd_exact(s: int) -> PiForm:
    """beta(2s+1) as a rational multiple of pi^(2s+1)."""
    _require(s >= 0, f"beta_odd_exact needs s >= 0, got {s}")
    n = 2 * s + 1
    coeff = Fraction(eval_at_one(cot_derivative_poly(2 * s)), 2**n * 2**n * factorial(2 * s))
    return PiForm(coeff, n)


def zeta_even_exact(s: int, sign_corrected: bool = True) -> PiForm:
    """zeta(2s) as a rational multiple of pi^(2s).

    The cot derivative at 1/4 equals minus the polygamma sum, so it has to be
    negated; ``sign_corrected=False`` keeps the un-negated value as a
    negative control for the verification harness.
    """
    _require(s >= 1, f"zeta_even_exact needs s >= 1, got {s}")
    n = 2 * s
    p = eval_at_one(cot_derivative_poly(n - 1))
    coeff = Fraction(p, 2**n * (2**n - 1) * factorial(n - 1))
    return PiForm(-coeff if sign_corrected else coeff, n)


def _check_euler_index(two_s: int) -> None:
    _require(two_s >= 0 and two_s % 2 == 0, f"Euler index must be even and >= 0, got {two_s}")


def euler_via_beta(two_s: int) -> EulerNumber:
    _check_euler_index(two_s)
    s = two_s // 2
    coeff = beta_odd_exact(s).coeff
    value = coeff * _sign(s) * 2 ** (two_s + 2) * factorial(two_s)
    assert value.denominator == 1
    return EulerNumber(two_s, int(value))


_euler_table: list[int] = [1]
_euler_lock = threading.Lock()


def euler_recurrence(two_s: int) -> EulerNumber:
    """E_0 = 1 and sum_{k=0}^{n} C(2n, 2k) E_2k = 0 for n >= 1."""
    _check_euler_index(two_s)
    n = two_s // 2
    table = _euler_table
    if n >= len(table):
        with _euler_lock:
            while len(table) <= n:
                m = len(table)
                table.append(-sum(binomial(2 * m, 2 * k) * table[k] for k in range(m)))
    return EulerNumber(two_s, table[n])


# -- verification harness ---------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    s: int
    precision: int
    left: BallReal
    right: BallReal

    @property
    def passed(self) -> bool:
        return self.left.intersects(self.right)

    @property
    def residual_bound(self) -> Fraction:
        """Largest possible gap between a point of ``left`` and one of ``right``."""
        return abs(self.left.midpoint - self.right.midpoint) + self.left.radius + self.right.radius

    def to_record(self) -> dict:
        left, right = _common_prec(self.left, self.right)
        return {
            "identity": self.identity,
            "s": self.s,
            "precision": self.precision,
            "working_bits": left.prec,
            "left_mid": dyadic_to_decimal(left.mid, left.prec),
            "left_rad": dyadic_to_decimal(left.rad, left.prec),
            "right_mid": dyadic_to_decimal(right.mid, right.prec),
            "right_rad": dyadic_to_decimal(right.rad, right.prec),
            "pass": self.passed,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "IdentityReport":
        bits = int(rec["working_bits"])

        def ball(side: str) -> BallReal:
            return BallReal(
                decimal_to_dyadic(rec[f"{side}_mid"], bits),
                decimal_to_dyadic(rec[f"{side}_rad"], bits),
                bits,
            )

        report = cls(rec["identity"], int(rec["s"]), int(rec["precision"]), ball("left"), ball("right"))
        if "pass" in rec and bool(rec["pass"]) != report.passed:
            raise ValueError(f"record for {rec['identity']} s={rec['s']} has an inconsistent pass flag")
        return report


def _common_prec(a: BallReal, b: BallReal) -> tuple[BallReal, BallReal]:
    p = max(a.prec, b.prec)
    return a.with_prec(p), b.with_prec(p)


def _exact_int(n: int, precision: int) -> BallReal:
    return BallReal.exact(n, precision + GUARD_BITS)


def reflection_check(s: int, precision: int) -> IdentityReport:
    _require(s >= 2, f"reflection check needs s >= 2, got {s}")
    left = polygamma_quarter(s - 1, Q3, precision) * _sign(s - 1) - polygamma_quarter(s - 1, Q1, precision)
    right = PiForm(eval_at_one(cot_derivative_poly(s - 1)), s).to_ball(precision)
    return IdentityReport("reflection", s, precision, left, right)


def _reflection_sides(s: int, p: int) -> tuple[BallReal, BallReal]:
    report = reflection_check(s, p)
    return report.left, report.right


def _euler_sides(route: Callable[[int, int], BallReal]):
    return lambda two_s, p: (route(two_s, p), _exact_int(euler_recurrence(two_s).value, p))


# identity id -> (arguments for a given max_s, builder of (left, right) enclosures)
Builder = Callable[[int, int], "tuple[BallReal, BallReal]"]


def _builders(sign_corrected: bool) -> dict[str, tuple[Callable[[int], range], Builder]]:
    def from_(lo, step=1):
        return lambda max_s: range(lo, max_s + 1, step)

    return {
        "beta_odd_exact": (
            from_(1, 2),
            lambda s, p: (beta_series(s, p), beta_odd_exact((s - 1) // 2).to_ball(p)),
        ),
        "beta_polygamma": (from_(1), lambda s, p: (beta_series(s, p), beta_via_polygamma(s, p))),
        "beta_substitution": (from_(2), lambda s, p: (beta_series(s, p), beta_via_substitution(s, p))),
        "beta_zeta_correction": (from_(2), lambda s, p: (beta_series(s, p), beta_via_zeta_correction(s, p))),
        # E_2t is tied to beta(2t+1), so 2t runs while 2t+1 <= max_s
        "euler_beta_series": (lambda max_s: range(0, max_s, 2), _euler_sides(euler_via_beta_series)),
        "euler_polygamma": (lambda max_s: range(0, max_s, 2), _euler_sides(euler_via_polygamma)),
        "odd_zeta": (
            from_(2),
            lambda s, p: (odd_denominator_sum(s, p), zeta_series(s, p) * Fraction(2**s - 1, 2**s)),
        ),
        "reflection": (from_(2), _reflection_sides),
        "zeta_beta": (from_(2), lambda s, p: (zeta_series(s, p), zeta_via_beta(s, p))),
        "zeta_even_exact": (
            from_(2, 2),
            lambda s, p: (zeta_series(s, p), zeta_even_exact(s // 2, sign_corrected).to_ball(p)),
        ),
        "zeta_polygamma": (from_(2), lambda s, p: (zeta_series(s, p), zeta_via_polygamma(s, p))),
    }


IDENTITY_IDS = tuple(sorted(_builders(True)))


def verify_all(max_s: int, precision: int, sign_corrected: bool = True) -> list[IdentityReport]:
    """One report per (identity, s) with s <= max_s, ordered by identity id then s."""
    _require(max_s >= 1, f"max_s must be >= 1, got {max_s}")
    reports = []
    for ident, (arguments, build) in sorted(_builders(sign_corrected).items()):
        for s in arguments(max_s):
            left, right = build(s, precision)
            reports.append(IdentityReport(ident, s, precision, left, right))
    return reports
