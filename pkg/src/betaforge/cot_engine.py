"""Exact derivatives of cot(pi z) as integer polynomials in c = cot(pi z).

``d^k/dz^k cot(pi z) = pi^k * P_k(cot(pi z))`` with ``P_0 = c`` and
``P_{k+1} = -(1 + c^2) P_k'``, because ``d/dz cot(pi z) = -pi (1 + cot^2(pi z))``.
At z = 1/4 we have c = 1, so the value needed downstream is the coefficient sum.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class CotPolynomial:
    order: int
    coeffs: tuple[int, ...]  # coeffs[j] multiplies c**j

    def __call__(self, c):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * c + a
        return acc

    @property
    def degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def check(self) -> None:
        """Raise ``AssertionError`` unless the structural invariants hold."""
        k = self.order
        sign = -1 if k & 1 else 1
        assert self.degree == k + 1, f"P_{k} has degree {self.degree}"
        assert self.coeffs[k + 1] == sign * math.factorial(k), f"P_{k} leading coefficient"
        for j, a in enumerate(self.coeffs):
            if not a:
                continue
            assert (j - (k + 1)) % 2 == 0, f"P_{k} has a term at c^{j}"
            assert (a > 0) == (sign > 0), f"P_{k} coefficient of c^{j} has wrong sign"


def cot_step(coeffs: Sequence[int]) -> list[int]:
    """Apply ``p -> -(1 + c^2) p'`` to a dense coefficient list."""
    deriv = [j * coeffs[j] for j in range(1, len(coeffs))]
    out = [0] * (len(deriv) + 2)
    for j, d in enumerate(deriv):
        out[j] -= d
        out[j + 2] -= d
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def derive_next(p: CotPolynomial) -> CotPolynomial:
    return CotPolynomial(p.order + 1, tuple(cot_step(p.coeffs)))


_P0 = CotPolynomial(0, (0, 1))
_cache: list[CotPolynomial] = [_P0]
_lock = threading.Lock()


def cot_derivative_poly(k: int) -> CotPolynomial:
    if k < 0:
        raise ValueError(f"derivative order must be non-negative, got {k}")
    if k < len(_cache):
        return _cache[k]
    with _lock:
        while len(_cache) <= k:
            _cache.append(derive_next(_cache[-1]))
        return _cache[k]


def eval_at_one(p: CotPolynomial) -> int:
    return sum(p.coeffs)
