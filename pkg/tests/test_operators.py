"""Tests for banded operators and their file formats."""

from pathlib import Path

import numpy as np
import pytest

from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, random_polynomial
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.operators import QuantizedOperator, read_operator, write_operator
from spin_semiclassics.utils.exceptions import PreconditionError, SerializationError


@pytest.fixture
def operator() -> QuantizedOperator:
    """A non-Hermitian banded operator."""
    p = random_polynomial(np.random.default_rng(12), 3, complex_coefficients=True)
    return quantize(p, 7)


class TestLayout:
    """Tests for band storage."""

    def test_entry_and_band_agree_with_dense(self, operator: QuantizedOperator) -> None:
        dense = operator.to_dense()
        for row in range(operator.dimension):
            for col in range(operator.dimension):
                assert operator.entry(row, col) == dense[row, col]
        np.testing.assert_array_equal(operator.band(-2), np.diag(dense, -2))

    def test_from_sparse_round_trip(self, operator: QuantizedOperator) -> None:
        rebuilt = QuantizedOperator.from_sparse(operator.to_dense())
        assert rebuilt.allclose(operator, atol=0.0)

    def test_from_bands(self) -> None:
        op = QuantizedOperator.from_bands(2, {0: np.array([1.0, 2.0, 3.0]), 1: np.array([4.0, 5.0])})
        np.testing.assert_array_equal(op.to_dense().real, [[1, 4, 0], [0, 2, 5], [0, 0, 3]])

    def test_from_bands_rejects_wrong_length(self) -> None:
        with pytest.raises(PreconditionError):
            QuantizedOperator.from_bands(2, {1: np.ones(3)})

    def test_halfband_cannot_exceed_size(self) -> None:
        with pytest.raises(PreconditionError):
            QuantizedOperator(1, np.zeros((5, 2)))

    def test_widen_and_trim(self, operator: QuantizedOperator) -> None:
        wide = operator.with_halfband(5)
        assert wide.halfband == 5
        assert wide.trimmed().halfband == operator.effective_halfband()
        with pytest.raises(PreconditionError):
            wide.with_halfband(1)

    def test_upper_banded_layout(self) -> None:
        op = QuantizedOperator.from_bands(2, {0: np.array([1.0, 2.0, 3.0]), 1: np.array([4.0, 5.0])})
        ab = op.upper_banded()
        np.testing.assert_array_equal(ab.real, [[0, 4, 5], [1, 2, 3]])


class TestAlgebra:
    """Tests that banded arithmetic matches dense arithmetic."""

    def test_matvec(self, operator: QuantizedOperator) -> None:
        v = np.random.default_rng(0).standard_normal(8) + 0j
        np.testing.assert_allclose(operator.matvec(v), operator.to_dense() @ v, atol=1e-14)

    def test_matvec_on_columns(self, operator: QuantizedOperator) -> None:
        block = np.random.default_rng(1).standard_normal((8, 3))
        np.testing.assert_allclose(operator @ block, operator.to_dense() @ block, atol=1e-14)

    def test_apply_to_dicke_vector(self, operator: QuantizedOperator) -> None:
        psi = DickeVector.random(np.random.default_rng(2), 7)
        np.testing.assert_allclose((operator @ psi).coeffs, operator.to_dense() @ psi.coeffs, atol=1e-14)

    def test_products_and_commutators(self, operator: QuantizedOperator) -> None:
        other = quantize(SpherePolynomial.parse("x z + y"), 7)
        a, b = operator.to_dense(), other.to_dense()
        np.testing.assert_allclose((operator @ other).to_dense(), a @ b, atol=1e-14)
        np.testing.assert_allclose(operator.commutator(other).to_dense(), a @ b - b @ a, atol=1e-14)

    def test_adjoint_and_hermitian_part(self, operator: QuantizedOperator) -> None:
        dense = operator.to_dense()
        np.testing.assert_allclose(operator.adjoint().to_dense(), dense.conj().T, atol=0.0)
        assert not operator.is_hermitian()
        assert operator.hermitized().is_hermitian()

    def test_linear_combinations(self, operator: QuantizedOperator) -> None:
        identity = QuantizedOperator.identity(7)
        combined = 2.0 * operator - identity / 4
        np.testing.assert_allclose(combined.to_dense(), 2.0 * operator.to_dense() - np.eye(8) / 4)
        assert (-operator).allclose(operator * -1.0)

    def test_trace_and_expectation(self, operator: QuantizedOperator) -> None:
        dense = operator.to_dense()
        psi = DickeVector.basis(7, 3)
        assert operator.trace() == pytest.approx(np.trace(dense))
        assert operator.expectation(psi) == pytest.approx(dense[3, 3])

    def test_size_mismatch(self, operator: QuantizedOperator) -> None:
        with pytest.raises(PreconditionError):
            _ = operator + QuantizedOperator.identity(6)
        with pytest.raises(PreconditionError):
            operator.matvec(np.ones(5))


class TestSerialization:
    """Tests for the text and binary operator formats."""

    def test_text_round_trip_is_exact(self, operator: QuantizedOperator) -> None:
        restored = QuantizedOperator.from_text(operator.to_text())
        assert restored.halfband == operator.halfband
        np.testing.assert_array_equal(restored.diagonals, operator.diagonals)

    def test_text_header(self, operator: QuantizedOperator) -> None:
        lines = operator.to_text().splitlines()
        assert lines[:3] == ["# quantized-operator v1", "N 7", "halfband 3"]
        assert len(lines) == 3 + 7

    def test_binary_round_trip_is_exact(self, operator: QuantizedOperator) -> None:
        restored = QuantizedOperator.from_bytes(operator.to_bytes())
        np.testing.assert_array_equal(restored.diagonals, operator.diagonals)

    def test_bad_magic(self, operator: QuantizedOperator) -> None:
        blob = b"XXXX" + operator.to_bytes()[4:]
        with pytest.raises(SerializationError, match="magic"):
            QuantizedOperator.from_bytes(blob)

    def test_truncated_payload(self, operator: QuantizedOperator) -> None:
        with pytest.raises(SerializationError):
            QuantizedOperator.from_bytes(operator.to_bytes()[:10])
        with pytest.raises(SerializationError):
            QuantizedOperator.from_bytes(operator.to_bytes()[:-16])

    def test_size_prefix_mismatch(self, operator: QuantizedOperator) -> None:
        with pytest.raises(SerializationError, match="Size prefix"):
            QuantizedOperator.from_bytes(operator.to_bytes() + b"\x00")

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "N 2\nhalfband 0\n0 1 0 1 0 1 0\n",
            "# quantized-operator v1\nN 2\nhalfband 1\n0 1 0 1 0 1 0\n",
            "# quantized-operator v1\nN 2\nhalfband 0\n0 1 0 1 0\n",
            "# quantized-operator v1\nN two\nhalfband 0\n0 1 0 1 0 1 0\n",
        ],
    )
    def test_malformed_text(self, text: str) -> None:
        with pytest.raises(SerializationError):
            QuantizedOperator.from_text(text)

    @pytest.mark.parametrize("binary", [False, True])
    def test_write_and_read(self, operator: QuantizedOperator, tmp_path: Path, binary: bool) -> None:
        path = write_operator(operator, tmp_path / "nested" / "op.dat", binary=binary)
        restored = read_operator(path)
        np.testing.assert_array_equal(restored.diagonals, operator.diagonals)
