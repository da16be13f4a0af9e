import json
import subprocess
import sys
from fractions import Fraction

import pytest

from betaforge import cli
from betaforge.identities import IdentityReport, beta_via_polygamma


def run(*argv):
    return cli.run(list(argv))


def test_beta_decimal():
    text, code = run("beta", "2")
    assert code == 0
    assert text.startswith("0.915965594177")
    assert text.endswith("± 1e-34")


def test_beta_exact():
    assert run("beta", "7", "--exact") == ("61/184320 * pi^7", 0)
    assert run("beta", "1", "--exact") == ("1/4 * pi^1", 0)


def test_beta_even_exact_has_no_closed_form():
    text, code = run("beta", "4", "--exact")
    assert code == cli.EXIT_NO_CLOSED_FORM
    assert "no known closed form" in text


def test_zeta():
    assert run("zeta", "4", "--exact") == ("1/90 * pi^4", 0)
    text, code = run("zeta", "3")
    assert code == 0 and text.startswith("1.2020569")
    assert run("zeta", "3", "--exact")[1] == cli.EXIT_NO_CLOSED_FORM


def test_euler():
    assert run("euler", "8") == ("1385", 0)
    assert run("euler", "6") == ("-61", 0)
    rec = json.loads(run("euler", "10", "--json")[0])
    assert rec == {"index": 10, "beta_route": "-50521", "recurrence_route": "-50521", "agree": True}


@pytest.mark.parametrize(
    "argv",
    [
        ["beta", "0"],
        ["zeta", "1"],
        ["euler", "7"],
        ["euler", "1002"],
        ["verify", "--max-s", "8", "--prec", "8"],
        ["verify", "--max-s", "0"],
        ["beta", "2", "--prec", "5000"],
        ["frobnicate"],
        ["beta", "two"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert cli.main(argv) == cli.EXIT_USAGE
    assert "betaforge:" in capsys.readouterr().err


def test_verify_passes():
    text, code = run("verify", "--max-s", "8", "--prec", "128")
    assert code == 0
    assert "66/66" in text


def test_verify_negative_control():
    text, code = run("verify", "--max-s", "4", "--uncorrected-zeta-even")
    assert code == cli.EXIT_VERIFY_FAILED
    assert "FAIL" in text


def test_verify_json_round_trip():
    text, code = run("verify", "--max-s", "4", "--prec", "64", "--json")
    assert code == 0
    lines = text.splitlines()
    reports = [IdentityReport.from_record(json.loads(line)) for line in lines]
    assert [json.dumps(r.to_record()) for r in reports] == lines
    fields = set(json.loads(lines[0]))
    assert {"identity", "s", "precision", "left_mid", "left_rad", "right_mid", "right_rad", "pass"} <= fields


def test_constants_table():
    text, code = run("constants")
    assert code == 0
    rows = text.splitlines()
    assert len(rows) == 5
    assert rows[0].startswith("beta(1) = pi/4")
    assert "beta(2) = G = 0.915965594177" in rows
    assert "beta(3) ≈ 0.968946146259" in rows
    assert "beta(4) ≈ 0.98894455174" in rows
    assert "beta(5) ≈ 0.996157828077" in rows


def test_env_precision(monkeypatch):
    monkeypatch.setenv("BETAFORGE_PREC", "64")
    text, _ = run("beta", "3")
    assert text.endswith(f"± 1e-{cli.decimal_digits(64)}")
    monkeypatch.setenv("BETAFORGE_PREC", "abc")
    assert cli.main(["beta", "3"]) == cli.EXIT_USAGE


def test_flag_overrides_env(monkeypatch):
    monkeypatch.setenv("BETAFORGE_PREC", "64")
    text, _ = run("beta", "3", "--prec", "256")
    assert text.endswith(f"± 1e-{cli.decimal_digits(256)}")


@pytest.mark.parametrize("prec", [32, 128, 512])
def test_printed_digits_lie_in_enclosure(prec):
    ball = beta_via_polygamma(3, prec)
    text, _ = run("beta", "3", "--json", "--prec", str(prec))
    rec = json.loads(text)
    assert Fraction(rec["mid"]) == ball.midpoint
    printed = run("beta", "3", "--prec", str(prec))[0].split(" ± ")[0]
    digits = len(printed.split(".")[1])
    t = Fraction(printed)
    assert ball.lower >= t and ball.upper < t + Fraction(1, 10**digits)


def test_exit_codes_via_subprocess():
    def code(*argv):
        return subprocess.run([sys.executable, "-m", "betaforge", *argv], capture_output=True).returncode

    assert code("euler", "8") == 0
    assert code("zeta", "1") == 1
    assert code("verify", "--max-s", "2", "--uncorrected-zeta-even") == 2
    assert code("beta", "2", "--exact") == 3
