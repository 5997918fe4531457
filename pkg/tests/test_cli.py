import io
import json
import subprocess
import sys

import pytest

from symgb import parse_cycles
from symgb.cli import main
from symgb.corpus import gen_cyclic, parse_ideal, print_ideal

WORKED = """\
ring: Q
vars: x y z
order: dp
perm: (1 2)(3)
x^2*y^2 - z
x*y - 2*y + 3*z
x*y - 2*x + 3*z
"""

G_TEXT = "x - y\ny*z - 3/4*z^2 - 2/3*y + 13/12*z\ny^2 - 2*y + 3*z\nz^3 + 4/9*z^2 - 56/81*y + 115/81*z\n"


@pytest.fixture
def worked_file(tmp_path):
    p = tmp_path / "worked.ideal"
    p.write_text(WORKED)
    return str(p)


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_expected_basis_text_matches_worked_example():
    from symgb import Ring

    R = Ring("x y z")
    want = [R(t).monic() for t in ["x - y", "12*y*z - 9*z^2 - 8*y + 13*z", "y^2 - 2*y + 3*z",
                                   "81*z^3 + 36*z^2 - 56*y + 115*z"]]
    assert [R(line) for line in G_TEXT.splitlines()] == want


@pytest.mark.parametrize("cmd", ["gb", "symm-gb", "symod-gb"])
def test_worked_example_all_algorithms(capsys, worked_file, cmd):
    code, out, _ = run(capsys, [cmd, worked_file])
    assert code == 0
    assert out == G_TEXT


def test_gb_lex_univariate(capsys, monkeypatch):
    code, out, _ = run(capsys, ["gb", "--order", "lp"], "vars: x\nx^2 - 1\n", monkeypatch)
    assert code == 0 and out == "x^2 - 1\n"


def test_gen_cyclic(capsys):
    code, out, _ = run(capsys, ["gen", "cyclic", "4"])
    assert code == 0
    assert parse_ideal(out) == gen_cyclic(4)


def test_gen_swiss_francs(capsys):
    code, out, _ = run(capsys, ["gen", "swiss-francs", "--char", "181", "--labeling", "45"])
    spec = parse_ideal(out)
    assert code == 0 and len(spec.generators) == 12
    assert spec.symmetry == parse_cycles("(4 5)(8 9)", 9)


def test_gen_pipe_into_symm_gb(capsys, monkeypatch):
    _, text, _ = run(capsys, ["gen", "cyclic", "5"])
    code, out, err = run(capsys, ["symm-gb", "--char", "31", "--time"], text, monkeypatch)
    assert code == 0
    code2, direct, _ = run(capsys, ["gb", "--char", "31"], text, monkeypatch)
    assert out == direct
    assert "ratio symmStd/std:" in err
    assert "time first_std:" in err


def test_perm_flag_overrides_header(capsys, monkeypatch):
    text = print_ideal(gen_cyclic(5, 31))
    code, out, _ = run(capsys, ["symm-gb", "--perm", "(1 4)(2 3)"], text, monkeypatch)
    code2, direct, _ = run(capsys, ["gb"], text, monkeypatch)
    assert code == 0 and out == direct


def test_output_json_symod(capsys, worked_file, tmp_path):
    dest = tmp_path / "out.json"
    code, _, _ = run(capsys, ["symod-gb", worked_file, "--output", str(dest), "--verify", "full", "--seed", "5"])
    doc = json.loads(dest.read_text())
    assert code == 0
    assert doc["basis"] == G_TEXT.splitlines()
    assert doc["ordering"] == "dp"
    assert doc["verification"] == "full"
    assert doc["fingerprint"] == [[1, 0, 0], [0, 1, 1], [0, 2, 0], [0, 0, 3]]
    assert len(doc["primes"]) >= 4
    assert all(2**30 <= p < 2**31 for p in doc["primes"])


def test_output_json_symm(capsys, worked_file, tmp_path):
    dest = tmp_path / "out.json"
    run(capsys, ["symm-gb", worked_file, "--output", str(dest)])
    doc = json.loads(dest.read_text())
    assert doc["k"] == 2 and doc["xi"] == "-1"
    assert doc["eigen_exponents"] == [1, 0, 0]


def test_deterministic_output(capsys, worked_file, tmp_path):
    outs = []
    for i in range(2):
        dest = tmp_path / f"o{i}.json"
        _, out, _ = run(capsys, ["symod-gb", worked_file, "--seed", "11", "--output", str(dest)])
        outs.append((out, dest.read_text()))
    assert outs[0] == outs[1]


def test_check_command(capsys, worked_file, tmp_path):
    good = tmp_path / "good.ideal"
    good.write_text("vars: x y z\n" + G_TEXT)
    code, out, _ = run(capsys, ["check", worked_file, str(good)])
    assert code == 0 and out == "OK\n"
    bad = tmp_path / "bad.ideal"
    bad.write_text("vars: x y z\nx - y\ny^2 - 2*y + 3*z\n")
    code, out, _ = run(capsys, ["check", worked_file, str(bad)])
    assert code == 1 and out.startswith("FAIL")
    larger = tmp_path / "larger.ideal"
    larger.write_text("vars: x y z\nx\ny\nz\n")
    code, out, _ = run(capsys, ["check", worked_file, str(larger)])
    assert code == 1 and "larger ideal" in out


def test_usage_errors_exit_2(capsys, worked_file, monkeypatch):
    assert run(capsys, ["symm-gb", worked_file, "--perm", "(1 5)"])[0] == 2
    assert run(capsys, ["symm-gb"], "vars: x y\nx + y\n", monkeypatch)[0] == 2
    assert run(capsys, ["gb", "/nonexistent/file"])[0] == 2
    assert run(capsys, ["symod-gb", worked_file, "--char", "7"])[0] == 2
    assert run(capsys, ["gen", "cyclic"])[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_compute_errors_exit_1(capsys, monkeypatch, worked_file):
    text = print_ideal(gen_cyclic(5, 5))
    code, _, err = run(capsys, ["symm-gb"], text, monkeypatch)
    assert code == 1 and "not applicable" in err
    code, _, err = run(capsys, ["symm-gb"], print_ideal(gen_cyclic(3)), monkeypatch)
    assert code == 1
    code, _, err = run(capsys, ["gb"], "vars: x\nx^-1\n", monkeypatch)
    assert code == 1 and "line 2" in err
    code, _, err = run(capsys, ["symm-gb", "--verify-symmetry", "--perm", "(1 3)(2)"], WORKED, monkeypatch)
    assert code == 1 and "not symmetric" in err


def test_module_entry_point(worked_file):
    r = subprocess.run([sys.executable, "-m", "symgb", "symm-gb", worked_file], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == G_TEXT
