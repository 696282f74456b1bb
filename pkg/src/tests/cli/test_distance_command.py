import json

import numpy as np
import pandas as pd
import pytest

from defdist.cli import main
from defdist.gallery import kahan
from defdist.io import write_matrix_market

KAHAN6 = ["distance", "--gallery", "kahan", "--n", "6", "--z0", "0,0"]


def table_rows(stdout):
    """Rows of the convergence table, split into columns."""
    lines = stdout.split("\n\n")[0].splitlines()
    return [line.split() for line in lines[1:]]


class TestDistanceCommand:
    """Test suite for the defdist distance command."""

    def test_kahan6(self, capsys):
        """Test that the final row shows epsilon = 4.7049e-04."""
        main(KAHAN6)

        out = capsys.readouterr().out
        rows = table_rows(out)
        assert rows[0][0] == "0"
        assert rows[-1][3] == "4.7049e-04"
        assert rows[-1][1] == "1.2763e-01"
        assert "epsilon*         = 4.7049e-04" in out
        assert "coalescing pair" in out

    def test_grcar20(self, capsys):
        """Test Grcar(20) from (0, -2.5) with epsilon0 = 0."""
        main(["distance", "--gallery", "grcar", "--n", "20", "--z0", "0,-2.5", "--eps0", "0"])

        out = capsys.readouterr().out
        rows = table_rows(out)
        assert rows[0][2:4] == ["-2.5000e+00", "0.0000e+00"]
        assert rows[-1][3] == "4.9141e-04"
        assert "mirror point" in out

    def test_svd_at(self, capsys):
        """Test Kahan(15) from alpha0 = 0.12 with the starting triplet taken at z = 0."""
        main(["distance", "--gallery", "kahan", "--n", "15", "--z0", "0.12,0", "--svd-at", "0,0"])

        rows = table_rows(capsys.readouterr().out)
        assert float(rows[0][3]) == pytest.approx(4.7454e-04, rel=1e-4)
        assert float(rows[-1][3]) == pytest.approx(4.4850e-07, abs=1e-10)
        assert float(rows[-1][1]) == pytest.approx(1.2865e-01, abs=1e-5)

    def test_byte_stable(self, capsys):
        """Test that two runs print identical bytes."""
        main(KAHAN6)
        first = capsys.readouterr().out
        main(KAHAN6)
        second = capsys.readouterr().out

        assert first == second

    def test_input_file(self, capsys, workdir):
        """Test reading A from a Matrix Market file."""
        write_matrix_market(workdir / "k6.mtx", kahan(6))

        main(["distance", "--input", "k6.mtx"])

        assert table_rows(capsys.readouterr().out)[-1][3] == "4.7049e-04"

    def test_json(self, workdir):
        """Test the JSON certificate keys and values."""
        main(KAHAN6 + ["--format", "json", "-o", "cert.json"])

        data = json.loads((workdir / "cert.json").read_text())
        for key in ("z_star_re", "z_star_im", "epsilon_star", "residual_right", "residual_left",
                    "orthogonality", "F_alphabeta", "iterations"):
            assert key in data
        assert data["epsilon_star"] == pytest.approx(4.7049e-04, abs=1e-7)
        assert data["F_alphabeta"] == pytest.approx(-4.3136e-01, abs=1e-3)
        assert data["iterations"] == len(data["records"]) - 1
        assert data["mirror_point"] is None
        assert len(data["coalescing_pair"]) == 2

    def test_csv(self, workdir):
        """Test the full-precision convergence table."""
        main(KAHAN6 + ["--format", "csv", "-o", "table.csv"])

        frame = pd.read_csv(workdir / "table.csv")
        assert list(frame.columns) == ["i", "alpha", "beta", "epsilon", "g_norm", "F_alphabeta"]
        assert frame["epsilon"].iloc[-1] == pytest.approx(4.7049e-04, abs=1e-7)
        assert np.all(np.diff(frame["i"]) == 1)
        assert (frame["epsilon"] >= 0).all()

    def test_missing_input(self, capsys):
        """Test that a missing file exits with 1 and names the path."""
        with pytest.raises(SystemExit) as exc_info:
            main(["distance", "--input", "missing.mtx"])

        assert exc_info.value.code == 1
        assert "missing.mtx" in capsys.readouterr().err

    def test_malformed_input(self, workdir):
        """Test that a parse error exits with 1."""
        (workdir / "bad.mtx").write_text("not a matrix\n")

        with pytest.raises(SystemExit) as exc_info:
            main(["distance", "--input", "bad.mtx"])

        assert exc_info.value.code == 1

    def test_two_sources(self, capsys):
        """Test that --input together with --gallery exits with 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(["distance", "--input", "a.mtx", "--gallery", "kahan", "--n", "6"])

        assert exc_info.value.code == 1

    def test_bad_tolerance(self):
        """Test that a non-positive tolerance exits with 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(KAHAN6 + ["--tol", "0"])

        assert exc_info.value.code == 1

    def test_gallery_needs_n(self):
        """Test that a gallery source without --n exits with 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(["distance", "--gallery", "kahan"])

        assert exc_info.value.code == 1

    def test_newton_failure(self, capsys):
        """Test that running out of iterations exits with 2 after printing the rows so far."""
        with pytest.raises(SystemExit) as exc_info:
            main(KAHAN6 + ["--maxit", "1"])

        captured = capsys.readouterr()
        assert exc_info.value.code == 2
        assert len(table_rows(captured.out)) == 2
        assert "Newton" in captured.err

    def test_certification_failure(self, capsys, workdir):
        """Test that a failed certificate exits with 3."""
        (workdir / "strict.yaml").write_text("certify:\n  orthogonality_tol: 0.0\n")

        with pytest.raises(SystemExit) as exc_info:
            main(["--config", "strict.yaml"] + KAHAN6)

        assert exc_info.value.code == 3
        assert "orthogonality" in capsys.readouterr().err

    def test_missing_config(self):
        """Test that an explicitly named but missing configuration exits with 1."""
        with pytest.raises(SystemExit) as exc_info:
            main(["--config", "nowhere.yaml"] + KAHAN6)

        assert exc_info.value.code == 1

    def test_config_newton_section(self, workdir):
        """Test that the YAML newton section reaches the solver."""
        (workdir / "defdist.yaml").write_text("newton:\n  max_iter: 1\n")

        with pytest.raises(SystemExit) as exc_info:
            main(KAHAN6)

        assert exc_info.value.code == 2

    def test_flag_overrides_config(self, capsys, workdir):
        """Test that --maxit wins over the YAML value."""
        (workdir / "defdist.yaml").write_text("newton:\n  max_iter: 1\n")

        main(KAHAN6 + ["--maxit", "50"])

        assert table_rows(capsys.readouterr().out)[-1][3] == "4.7049e-04"

    def test_log_file(self, workdir):
        """Test that logger.dir in the configuration creates a session log."""
        (workdir / "defdist.yaml").write_text("project: kahan\nlogger:\n  dir: logs\n")

        main(KAHAN6)

        logs = list((workdir / "logs" / "kahan").glob("*.log"))
        assert len(logs) == 1
        assert "4.7049e-04" in logs[0].read_text()
