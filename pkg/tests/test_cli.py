from __future__ import annotations

import subprocess
import sys

import pytest

from grassmann_aut.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "-n", "3", "e1^e2 + [e1,e3]")
    assert code == 0 and out == "e{1,2} + 2*e{1,3}\n"


def test_eval_prime_field(capsys):
    code, out, _ = run(capsys, "eval", "-n", "2", "--field", "GF:5", "1/2*e1")
    assert out == "3*e{1}\n"


def test_env_field(capsys, monkeypatch):
    monkeypatch.setenv("GRASSMANN_AUT_FIELD", "GF(3)")
    assert run(capsys, "eval", "-n", "1", "2 + 2")[1] == "1\n"


def test_center_and_com(capsys):
    code, out, _ = run(capsys, "center", "-n", "3")
    assert out.splitlines()[0] == "center dim=5"
    code, out, _ = run(capsys, "com", "-n", "4")
    assert out.splitlines()[0] == "commutator subalgebra dim=8"


def test_list_stable(capsys):
    code, out, _ = run(capsys, "list-stable", "-n", "3")
    assert code == 0
    assert out.splitlines()[0] == "10 stable subspaces n=3 field=Q"
    assert sum(1 for line in out.splitlines() if line.startswith("[")) == 10


def test_list_subalgebras(capsys):
    code, out, _ = run(capsys, "list-stable-subalgebras", "-n", "2", "--unital")
    assert code == 0 and "unital subalgebras" in out.splitlines()[0]


def test_check_and_hull(capsys, tmp_path):
    f = tmp_path / "B.sub"
    f.write_text("n=3 field=Q\ne1\n")
    code, out, _ = run(capsys, "check", "-f", str(f))
    assert code == 1 and out.startswith("UNSTABLE: witness sigma=")
    code, out, err = run(capsys, "hull", "-f", str(f))
    assert code == 0 and err == "hull: form B(j=1,S={1,3},i=2) dim=7\n"
    assert out.splitlines()[0] == "n=3 field=Q" and len(out.splitlines()) == 8
    g = tmp_path / "C.sub"
    g.write_text(out)
    code, out, _ = run(capsys, "check", "-f", str(g))
    assert code == 0 and out == "STABLE: form B(j=1,S={1,3},i=2)\n"


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", "e1 + e{1,2}", "e2")
    assert code == 0
    assert out.splitlines() == ["a = -1/2*e{2}", "f(e1) = e{1}", "f(e2) = e{2}"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "-n", "2", "--field", "GF:3", "--mode", "exhaustive", "--trials", "20")
    assert code == 0 and out.splitlines()[-1] == "SUMMARY PASS"


@pytest.mark.parametrize("argv,kind", [
    (["eval", "-n", "2", "e3"], "GeneratorIndexError"),
    (["eval", "-n", "2", "e1 +"], "ExpressionSyntaxError"),
    (["eval", "e1"], "CliError"),
    (["eval", "-n", "40", "e1"], "ValueError"),
    (["check", "-f", "/nonexistent/B.sub"], "FileNotFoundError"),
    (["factor", "e1", "e1"], "NotAutomorphism"),
])
def test_errors_are_one_line(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.count("\n") == 1 and err.startswith(f"error: {kind}: ")


@pytest.mark.parametrize("argv", [["eval", "-n", "2", "--field", "GF:2", "e1"], ["bogus"], []])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    err = capsys.readouterr().err
    assert "expr    :=" in err and err.splitlines()[-1].startswith("error: UsageError: ")


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "grassmann_aut.cli", "verify", "-n", "3", "--seed", "5", "--trials", "10"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
