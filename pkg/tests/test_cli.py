import subprocess
import sys
from pathlib import Path

import pytest

from biquat.cli import main

DOCS = Path(__file__).resolve().parent.parent / "docs" / "instances"
TRANSPOSE_Q = str(DOCS / "transpose-M4-Q.spec")
SIGMA = str(DOCS / "example-sigma.spec")
SIGMA_PRIME = str(DOCS / "example-sigma-prime.spec")

SYMPLECTIC = """[field]
kind = prime
p = 5
[algebra]
factor1 = matrix
factor2 = matrix
[involution]
factor1 = canonical
factor2 = t_alpha(2)
"""

TRANSPOSE_F5 = "[field]\nkind = prime\np = 5\n[algebra]\nmatrix = 4\n[involution]\nglobal = transpose\n"


@pytest.fixture(autouse=True)
def no_seed_override(monkeypatch):
    monkeypatch.delenv("PFAFF_SEED", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_human_and_machine(capsys, tmp_path):
    code, out, _ = run(capsys, "invariants", SIGMA)
    assert code == 0 and "metabolic    false" in out
    target = tmp_path / "r.txt"
    code, out, _ = run(capsys, "invariants", TRANSPOSE_Q, "--machine", "--output", str(target))
    assert code == 0
    assert target.read_text() == out
    assert "q_minus = <1,1,1>_q\n" in out and "transpose_type = true\n" in out


def test_invariants_errors(capsys, tmp_path):
    code, _, err = run(capsys, "invariants", str(tmp_path / "missing.spec"))
    assert code == 2 and "error:" in err
    bad = tmp_path / "bad.spec"
    bad.write_text("[field]\nkind = prime\np = 5\n[algebra]\nmatrix = 5\n[involution]\nglobal = transpose\n")
    code, _, err = run(capsys, "invariants", str(bad))
    assert code == 2 and f"{bad}:5:10:" in err
    sym = tmp_path / "sym.spec"
    sym.write_text(SYMPLECTIC)
    code, _, err = run(capsys, "invariants", str(sym))
    assert code == 3 and "orthogonal involution required" in err


def test_compare(capsys, tmp_path):
    code, out, _ = run(capsys, "compare", SIGMA, SIGMA_PRIME)
    assert code == 0 and out.startswith("verdict = not_isomorphic\n") and "evidence = " in out
    code, out, _ = run(capsys, "compare", SIGMA, SIGMA)
    assert out.startswith("verdict = isomorphic\n")
    conj = "1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, s, 0, 0, 0, 1"
    code, out, _ = run(capsys, "compare", SIGMA, SIGMA, "--conjugate", conj)
    assert code == 0 and out.startswith("verdict = isomorphic\n")
    code, _, err = run(capsys, "compare", SIGMA, TRANSPOSE_Q)
    assert code == 3 and "fields differ" in err
    code, _, err = run(capsys, "compare", SIGMA, SIGMA, "--conjugate", "1, 2")
    assert code == 2
    code, _, err = run(capsys, "compare", SIGMA, SIGMA, "--conjugate", "1, (s")
    assert code == 2
    zero = ", ".join(["0"] * 16)
    code, _, err = run(capsys, "compare", SIGMA, SIGMA, "--conjugate", zero)
    assert code == 3 and "invertible" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--field", "F3", "--trials", "3", "--seed", "1")
    assert code == 0 and "FAIL" not in out
    code, _, _ = run(capsys, "verify", "--field", "F6", "--trials", "1")
    assert code == 2
    code, _, _ = run(capsys, "verify", "--field", "F3", "--trials", "-1")
    assert code == 2


def test_seed_environment_variable(capsys, monkeypatch, tmp_path):
    spec = tmp_path / "t.spec"
    spec.write_text(TRANSPOSE_F5)
    monkeypatch.setenv("PFAFF_SEED", "17")
    code, out, _ = run(capsys, "invariants", str(spec), "--machine", "--seed", "3")
    assert code == 0 and "seed = 17\n" in out
    monkeypatch.setenv("PFAFF_SEED", "x")
    code, _, err = run(capsys, "invariants", str(spec))
    assert code == 2 and "PFAFF_SEED" in err


def test_reproduce_example(capsys):
    code, out, _ = run(capsys, "reproduce-example")
    assert code == 0
    assert out.splitlines()[-1] == "anisotropic: yes; Pf distinct: yes; not isomorphic: yes; Phi isomorphic: yes"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "biquat", "invariants", TRANSPOSE_Q], capture_output=True, text=True)
    assert proc.returncode == 0 and "transpose    true" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "biquat"], capture_output=True, text=True)
    assert proc.returncode == 2
