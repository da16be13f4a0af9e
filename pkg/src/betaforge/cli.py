"""``betaforge`` command line.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 no closed form.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import identities
from .numeric_core import BallReal, dyadic_to_decimal
from .series_eval import zeta_series

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_NO_CLOSED_FORM = 3

DEFAULT_PRECISION = 128
MIN_PRECISION = 32
MAX_PRECISION = 4096
MAX_EULER_INDEX = 1000

# row label, s, number of digits shown
CONSTANTS_TABLE = (
    ("beta(1) = pi/4 ≈", 1, 12),
    ("beta(2) = G =", 2, 12),
    ("beta(3) ≈", 3, 12),
    ("beta(4) ≈", 4, 11),
    ("beta(5) ≈", 5, 12),
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def decimal_digits(precision: int) -> int:
    return max(int(precision * math.log10(2)) - 4, 1)


def render_decimal(ball: BallReal, precision: int) -> str:
    text, digits = ball.certified_digits(decimal_digits(precision))
    return f"{text} ± 1e-{digits}"


def _ball_record(quantity: str, s: int, precision: int, ball: BallReal) -> str:
    return json.dumps(
        {
            "quantity": quantity,
            "s": s,
            "precision": precision,
            "working_bits": ball.prec,
            "mid": dyadic_to_decimal(ball.mid, ball.prec),
            "rad": dyadic_to_decimal(ball.rad, ball.prec),
        }
    )


def cmd_beta(s: int, precision: int, exact: bool = False, as_json: bool = False) -> tuple[str, int]:
    if s < 1:
        raise UsageError(f"beta needs s >= 1, got {s}")
    if exact:
        if s % 2 == 0:
            return f"beta({s}): no known closed form", EXIT_NO_CLOSED_FORM
        return str(identities.beta_odd_exact((s - 1) // 2)), EXIT_OK
    ball = identities.beta_via_polygamma(s, precision)
    if as_json:
        return _ball_record("beta", s, precision, ball), EXIT_OK
    return render_decimal(ball, precision), EXIT_OK


def cmd_zeta(s: int, precision: int, exact: bool = False, as_json: bool = False) -> tuple[str, int]:
    if s < 2:
        raise UsageError(f"zeta needs s >= 2, got {s}")
    if exact:
        if s % 2:
            return f"zeta({s}): no known closed form", EXIT_NO_CLOSED_FORM
        return str(identities.zeta_even_exact(s // 2)), EXIT_OK
    ball = zeta_series(s, precision)
    if as_json:
        return _ball_record("zeta", s, precision, ball), EXIT_OK
    return render_decimal(ball, precision), EXIT_OK


def cmd_euler(two_s: int, as_json: bool = False) -> tuple[str, int]:
    if two_s < 0 or two_s % 2 or two_s > MAX_EULER_INDEX:
        raise UsageError(f"euler needs an even index in [0, {MAX_EULER_INDEX}], got {two_s}")
    via_beta = identities.euler_via_beta(two_s).value
    if not as_json:
        return str(via_beta), EXIT_OK
    via_rec = identities.euler_recurrence(two_s).value
    rec = {
        "index": two_s,
        "beta_route": str(via_beta),
        "recurrence_route": str(via_rec),
        "agree": via_beta == via_rec,
    }
    return json.dumps(rec), EXIT_OK if via_beta == via_rec else EXIT_VERIFY_FAILED


def cmd_verify(
    max_s: int, precision: int, as_json: bool = False, sign_corrected: bool = True
) -> tuple[str, int]:
    if max_s < 1:
        raise UsageError(f"--max-s must be >= 1, got {max_s}")
    reports = identities.verify_all(max_s, precision, sign_corrected=sign_corrected)
    ok = all(r.passed for r in reports)
    if as_json:
        text = "\n".join(json.dumps(r.to_record()) for r in reports)
    else:
        lines = [f"{'identity':<22} {'s':>3}  {'status':<6} residual"]
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            lines.append(f"{r.identity:<22} {r.s:>3}  {status:<6} {float(r.residual_bound):.3e}")
        failed = sum(not r.passed for r in reports)
        lines.append(f"{len(reports) - failed}/{len(reports)} identities hold at {precision} bits")
        text = "\n".join(lines)
    return text, EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_constants(precision: int) -> tuple[str, int]:
    rows = []
    for label, s, digits in CONSTANTS_TABLE:
        text, _ = identities.beta_via_polygamma(s, precision).certified_digits(digits)
        rows.append(f"{label} {text}")
    return "\n".join(rows), EXIT_OK


def _precision_default() -> int:
    env = os.environ.get("BETAFORGE_PREC")
    if env is None:
        return DEFAULT_PRECISION
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"BETAFORGE_PREC must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--prec", type=int, default=None, help="working precision in bits")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="betaforge", description="Certified Dirichlet beta, zeta and Euler number values.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("beta", parents=[common], help="beta(s)")
    p.add_argument("s", type=int)
    p.add_argument("--exact", action="store_true", help="rational multiple of a pi power (odd s)")

    p = sub.add_parser("zeta", parents=[common], help="zeta(s)")
    p.add_argument("s", type=int)
    p.add_argument("--exact", action="store_true", help="rational multiple of a pi power (even s)")

    p = sub.add_parser("euler", parents=[common], help="Euler number E_2s")
    p.add_argument("index", type=int)

    p = sub.add_parser("verify", parents=[common], help="cross-check every identity")
    p.add_argument("--max-s", type=int, default=8)
    # negative control: keep the un-negated cot form for even zeta values
    p.add_argument("--uncorrected-zeta-even", action="store_true", help=argparse.SUPPRESS)

    sub.add_parser("constants", parents=[common], help="table of beta(1)..beta(5)")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    precision = args.prec if args.prec is not None else _precision_default()
    if not MIN_PRECISION <= precision <= MAX_PRECISION:
        raise UsageError(f"precision must be in [{MIN_PRECISION}, {MAX_PRECISION}], got {precision}")
    if args.command == "beta":
        return cmd_beta(args.s, precision, args.exact, args.json)
    if args.command == "zeta":
        return cmd_zeta(args.s, precision, args.exact, args.json)
    if args.command == "euler":
        return cmd_euler(args.index, args.json)
    if args.command == "verify":
        return cmd_verify(args.max_s, precision, args.json, not args.uncorrected_zeta_even)
    return cmd_constants(precision)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        text, code = run(argv)
    except UsageError as exc:
        print(f"betaforge: {exc}", file=sys.stderr)
        print(build_parser().format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE
    stream = sys.stderr if code == EXIT_NO_CLOSED_FORM else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
