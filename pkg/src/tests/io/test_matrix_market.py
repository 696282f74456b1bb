import numpy as np
import pytest
from numpy.testing import assert_allclose

from defdist.exceptions import NonFinite, ParseError, UnsupportedFormat
from defdist.gallery import grcar, kahan
from defdist.io import format_matrix_market, read_matrix_market, write_matrix_market


def write(tmp_path, text, name="a.mtx"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestReadMatrixMarket:
    """Test suite for the Matrix Market reader."""

    def test_coordinate_complex(self, tmp_path):
        """Test a 2x2 coordinate file with 3 entries; the unlisted entry is 0."""
        path = write(tmp_path, (
            "%%MatrixMarket matrix coordinate complex general\n"
            "% a comment\n"
            "2 2 3\n"
            "1 1 1.5 -2\n"
            "2 1 0 1\n"
            "2 2 3 0\n"
        ))

        assert_allclose(read_matrix_market(path), [[1.5 - 2j, 0], [1j, 3]])

    def test_array_is_column_major(self, tmp_path):
        """Test that array entries fill column by column."""
        path = write(tmp_path, (
            "%%MatrixMarket matrix array complex general\n"
            "2 2\n"
            "1 0\n"
            "2 0\n"
            "3 0\n"
            "4 1\n"
        ))

        assert_allclose(read_matrix_market(path), [[1, 3], [2, 4 + 1j]])

    @pytest.mark.parametrize("field", ["real", "integer"])
    def test_real_promoted(self, tmp_path, field):
        """Test that real and integer fields become complex with zero imaginary part."""
        path = write(tmp_path, (
            f"%%MatrixMarket matrix coordinate {field} general\n"
            "2 2 2\n"
            "1 2 7\n"
            "2 1 -3\n"
        ))
        A = read_matrix_market(path)

        assert A.dtype == np.complex128
        assert_allclose(A, [[0, 7], [-3, 0]])

    def test_header_case_and_blank_lines(self, tmp_path):
        """Test a mixed-case banner and blank lines between entries."""
        path = write(tmp_path, (
            "%%matrixmarket MATRIX Coordinate Real General\n"
            "\n"
            "1 1 1\n"
            "\n"
            "1 1 2.5\n"
        ))

        assert_allclose(read_matrix_market(path), [[2.5]])

    def test_pattern(self, tmp_path):
        """Test that pattern matrices are unsupported."""
        path = write(tmp_path, "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n")

        with pytest.raises(UnsupportedFormat):
            read_matrix_market(path)

    @pytest.mark.parametrize("symmetry", ["symmetric", "hermitian", "skew-symmetric"])
    def test_symmetry(self, tmp_path, symmetry):
        """Test that non-general symmetry is unsupported."""
        path = write(tmp_path, f"%%MatrixMarket matrix coordinate real {symmetry}\n1 1 1\n1 1 1\n")

        with pytest.raises(UnsupportedFormat):
            read_matrix_market(path)

    def test_bad_banner(self, tmp_path):
        """Test that a missing banner is a parse error on line 1."""
        path = write(tmp_path, "2 2 0\n")

        with pytest.raises(ParseError) as exc_info:
            read_matrix_market(path)

        assert exc_info.value.line == 1

    def test_bad_value_line_number(self, tmp_path):
        """Test that a malformed value reports its own line."""
        path = write(tmp_path, (
            "%%MatrixMarket matrix coordinate complex general\n"
            "% comment\n"
            "2 2 2\n"
            "1 1 1 0\n"
            "2 2 one 0\n"
        ))

        with pytest.raises(ParseError) as exc_info:
            read_matrix_market(path)

        assert exc_info.value.line == 5
        assert str(exc_info.value).startswith("line 5:")

    def test_index_out_of_range(self, tmp_path):
        """Test that an index beyond the declared size is a parse error."""
        path = write(tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n")

        with pytest.raises(ParseError) as exc_info:
            read_matrix_market(path)

        assert exc_info.value.line == 3

    def test_missing_entries(self, tmp_path):
        """Test that fewer entries than declared is a parse error."""
        path = write(tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n")

        with pytest.raises(ParseError, match="expected 3 entries"):
            read_matrix_market(path)

    def test_extra_entries(self, tmp_path):
        """Test that more entries than declared is a parse error at the first extra line."""
        path = write(tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 1\n")

        with pytest.raises(ParseError) as exc_info:
            read_matrix_market(path)

        assert exc_info.value.line == 4

    def test_duplicate_entry(self, tmp_path):
        """Test that an entry listed twice is a parse error."""
        path = write(tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 2\n")

        with pytest.raises(ParseError, match="duplicate"):
            read_matrix_market(path)

    def test_non_finite(self, tmp_path):
        """Test that NaN values are refused."""
        path = write(tmp_path, "%%MatrixMarket matrix array real general\n1 1\nnan\n")

        with pytest.raises(NonFinite):
            read_matrix_market(path)

    def test_missing_file(self, tmp_path, fake):
        """Test that a missing path raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            read_matrix_market(tmp_path / f"{fake.word()}.mtx")


class TestWriteMatrixMarket:
    """Test suite for the Matrix Market writer."""

    def test_kahan_bitwise(self, tmp_path):
        """Test that kahan(6) reads back bitwise equal."""
        path = tmp_path / "k6.mtx"
        write_matrix_market(path, kahan(6))

        assert np.array_equal(read_matrix_market(path), kahan(6))

    def test_complex_bitwise(self, tmp_path, random_complex):
        """Test that arbitrary complex doubles survive the 17-digit text form."""
        A = random_complex(5) * 1e-7
        path = tmp_path / "r.mtx"
        write_matrix_market(path, A)

        assert np.array_equal(read_matrix_market(path), A)

    def test_nonzeros_only(self):
        """Test that grcar(4) is written with its 13 nonzeros."""
        lines = format_matrix_market(grcar(4)).splitlines()

        assert lines[0] == "%%MatrixMarket matrix coordinate complex general"
        assert lines[2] == "4 4 13"
        assert len(lines) == 3 + 13

    def test_column_order(self):
        """Test that entries go out column by column."""
        lines = format_matrix_market(np.array([[1.0, 2.0], [3.0, 0.0]])).splitlines()

        assert lines[3:] == ["1 1 1 0", "2 1 3 0", "1 2 2 0"]
