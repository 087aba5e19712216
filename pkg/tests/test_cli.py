import json
import subprocess
import sys

import pytest

from qhowe.cli import element, main
from qhowe.oqn import l_adjacent, lambda_range
from qhowe.uqsu import intermediate_casimir


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_pass_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oscillator", "--n", "1", "--threads", "1")
    assert code == 0 and "PASS" in out


def test_verify_json_stdout(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "pluecker", "--n", "2", "--threads", "1",
                       "--json", "-")
    assert code == 0
    payload = json.loads(out[out.index("{"):])
    assert payload["suite"] == "pluecker" and len(payload["results"]) == 2


def test_verify_json_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--suite", "duality", "--n", "2", "--threads", "1",
                     "--json", str(path))
    assert code == 0
    assert json.loads(path.read_text())["suite"] == "duality"


@pytest.mark.parametrize("argv", [
    ["verify"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "aw3-universal", "--n", "2"],
    ["verify", "--suite", "oscillator", "--n", "7"],
    ["verify", "--suite", "oscillator", "--n", "-1"],
    ["print", "L13"],
    ["print", "L21"],
    ["print", "Lambda4"],
    ["print", "Bogus"],
    ["residual", "L12", "--cutoff", "0"],
    ["spectrum", "L12"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_failing_preset_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "aw3-oq", "--preset", "sec41",
                       "--threads", "1")
    assert code == 1 and "FAIL" in out


def test_print_elements(capsys):
    code, out, _ = run(capsys, "print", "L12")
    assert code == 0 and out.strip() == str(l_adjacent(1))
    assert element("LambdaRange13") == lambda_range((1, 3))
    assert element("Lambda123") == lambda_range((1, 3))
    assert element("C11", n=1) == intermediate_casimir((1, 1))
    assert element("L[5][6]") == l_adjacent(5)
    assert not element("L13+").is_zero() and not element("L13-").is_zero()


def test_residual_and_spectrum(capsys):
    code, out, _ = run(capsys, "residual", "L12", "--cutoff", "3", "--n", "1")
    assert code == 0 and float(out) > 0
    code, out, _ = run(capsys, "spectrum", "C11", "--n", "1", "--cutoff", "3", "--json", "-")
    assert code == 0
    vals = json.loads(out)
    assert len(vals) == 6 and min(abs(v) for v in vals) < 1e-12


def test_adjudicate_deterministic(capsys):
    code, out, _ = run(capsys, "adjudicate", "--threads", "1")
    assert code == 0 and "passing preset: casmap" in out and "equal" in out
    _, out2, _ = run(capsys, "adjudicate", "--threads", "1")
    strip = lambda s: [ln.split(" ms")[0].rsplit("terms", 1)[0] for ln in s.splitlines()]
    assert strip(out) == strip(out2)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "qhowe.cli", "print", "L12"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
