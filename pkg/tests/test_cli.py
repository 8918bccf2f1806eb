import math

import pytest

from symsos.cli import main
from symsos.fixtures import ROBINSON_D4_TEXT


@pytest.fixture
def d4_poly_file(tmp_path):
    path = tmp_path / "d4.poly"
    path.write_text("vars x y\n" + ROBINSON_D4_TEXT + "\n")
    return str(path)


class TestBound:
    def test_bound_round_verify_loop(self, d4_poly_file, tmp_path, capsys):
        cert_path = str(tmp_path / "d4.cert")
        rc = main(["bound", "--group", "dihedral:4", "--poly", d4_poly_file,
                   "--round", "--out", cert_path])
        out = capsys.readouterr().out
        assert rc == 0
        assert "-3825/4096" in out
        assert "[2, 1, 1, 3]" in out
        rc = main(["verify", "--cert", cert_path, "--poly", d4_poly_file])
        assert rc == 0

    def test_inline_polynomial_with_vars_flag(self, capsys):
        rc = main(["bound", "--group", "trivial:1", "--poly", "x^2 + 1",
                   "--vars", "x"])
        assert rc == 0
        assert "lambda (float) 1" in capsys.readouterr().out

    def test_no_certificate_exit_code(self, capsys):
        # the float stage can report a spurious finite bound on this famously
        # SOS-infeasible instance; exact rounding refuses, and that is the
        # contract --round enforces
        rc = main(["bound", "--group", "c2n:2", "--poly",
                   "x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1", "--vars", "x,y",
                   "--round"])
        assert rc == 2

    def test_usage_error(self):
        assert main(["bound", "--group", "dihedral:4"]) == 1
        assert main(["bound", "--group", "nosuch:1", "--poly", "x^2",
                     "--vars", "x"]) == 1


class TestMolien:
    def test_symmetric4_table(self, capsys):
        rc = main(["molien", "--group", "symmetric:4", "--dmax", "15"])
        out = capsys.readouterr().out
        assert rc == 0
        lines = [ln for ln in out.splitlines() if ln.strip()]
        assert lines[-1].split()[0] == "total"
        assert [int(v) for v in lines[-1].split()[1:]] == \
            [math.comb(3 + d, d) for d in range(16)]
        theta5 = [ln for ln in lines if ln.startswith("theta5")][0]
        assert [int(v) for v in theta5.split()[1:]] == \
            [0, 0, 0, 0, 0, 0, 1, 1, 2, 3, 5, 6, 9, 11, 15, 18]


class TestGenerators:
    def test_dihedral_dump(self, capsys):
        rc = main(["generators", "--group", "dihedral:4"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "theta y^2 + x^2" in out     # canonical graded-lex rendering
        assert "theta5: module rank 2" in out
        assert "Pi[1,1] = t1" in out


class TestVerify:
    def test_failure_exit_code(self, tmp_path, d4_poly_file, capsys):
        cert_path = str(tmp_path / "cert.txt")
        rc = main(["bound", "--group", "dihedral:4", "--poly", d4_poly_file,
                   "--round", "--out", cert_path])
        assert rc == 0
        other = tmp_path / "other.poly"
        other.write_text("vars x y\nx^2 + y^2\n")
        rc = main(["verify", "--cert", cert_path, "--poly", str(other)])
        assert rc == 3
