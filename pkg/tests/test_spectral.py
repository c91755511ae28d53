"""Tests for eigensolvers, spectrum distances and perturbation checks."""

import numpy as np
import pytest

from spin_semiclassics.hamiltonians.base import SymbolExpansion
from spin_semiclassics.hamiltonians.registry import create_model, cw_hamiltonian, lmg_hamiltonian
from spin_semiclassics.models.schemas import ModelKind, ModelSpec
from spin_semiclassics.polynomials.points import RealInterval, SpherePoint
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, random_polynomial
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.reflections import z2_flip
from spin_semiclassics.spectral.checks import (
    containment_excess,
    quasi_eigenvector_defect,
    spectrum_distance,
    weyl_check,
)
from spin_semiclassics.spectral.eigen import Spectrum, eigenpair, eigenvectors, eigh, ground_state, operator_norm
from spin_semiclassics.utils.exceptions import InvariantViolationError, PreconditionError, SerializationError

CW = ModelSpec(kind=ModelKind.CURIE_WEISS, J=1.0, B=0.5)
Z = SpherePolynomial.coordinate("z")


class TestEigh:
    """Tests for the banded Hermitian eigensolver."""

    def test_diagonal_operator(self) -> None:
        values = eigh(quantize(Z, 4)).eigenvalues
        np.testing.assert_allclose(values, [-2 / 3, -1 / 3, 0.0, 1 / 3, 2 / 3], atol=1e-15)

    @pytest.mark.parametrize(
        "operator",
        [
            cw_hamiltonian(30, 1.0, 0.5),
            lmg_hamiltonian(25, 1.0, 0.5, 0.2),
            quantize(random_polynomial(np.random.default_rng(3), 4), 21),
        ],
        ids=["tridiagonal", "real-banded", "complex-banded"],
    )
    def test_matches_dense_solver(self, operator: QuantizedOperator) -> None:
        expected = np.linalg.eigvalsh(operator.to_dense())
        np.testing.assert_allclose(eigh(operator).eigenvalues, expected, atol=1e-12)

    def test_eigenvectors(self) -> None:
        operator = lmg_hamiltonian(12, 1.0, 0.5, 0.2)
        values, vecs = eigenvectors(operator)
        dense = operator.to_dense()
        np.testing.assert_allclose(dense @ vecs, vecs * values, atol=1e-12)

    def test_non_hermitian_rejected(self) -> None:
        shift = QuantizedOperator.from_bands(4, {1: np.ones(4)})
        with pytest.raises(PreconditionError, match="not Hermitian"):
            eigh(shift)


class TestSpectrum:
    """Tests for the Spectrum container and its binary form."""

    def test_sorted_and_bounds(self) -> None:
        spectrum = Spectrum(2, np.array([0.5, -1.0, 0.25]))
        assert spectrum.eigenvalues.tolist() == [-1.0, 0.25, 0.5]
        assert (spectrum.lo, spectrum.hi) == (-1.0, 0.5)
        assert spectrum.records()[0] == {"N": 2, "index": 0, "eigenvalue": -1.0}

    def test_wrong_length(self) -> None:
        with pytest.raises(PreconditionError):
            Spectrum(3, np.zeros(3))

    def test_binary_round_trip(self) -> None:
        spectrum = eigh(cw_hamiltonian(9, 1.0, 0.5))
        restored = Spectrum.from_bytes(spectrum.to_bytes())
        np.testing.assert_array_equal(restored.eigenvalues, spectrum.eigenvalues)

    def test_bad_payloads(self) -> None:
        blob = Spectrum(1, np.array([0.0, 1.0])).to_bytes()
        with pytest.raises(SerializationError):
            Spectrum.from_bytes(b"SSQO" + blob[4:])
        with pytest.raises(SerializationError):
            Spectrum.from_bytes(blob[:-8])
        with pytest.raises(SerializationError):
            Spectrum.from_bytes(blob[:6])


class TestEigenpairs:
    """Tests for ground states and selected eigenpairs."""

    def test_ground_state_in_symmetry_sector(self) -> None:
        operator = cw_hamiltonian(64, 1.0, 0.5)
        pair = ground_state(operator, z2_flip())
        assert pair.value == pytest.approx(eigh(operator).lo, abs=1e-10)
        assert pair.sector in (1, -1)
        image = z2_flip().apply(pair.vector).coeffs
        np.testing.assert_allclose(image, pair.sector * pair.vector.coeffs, atol=1e-12)
        assert pair.vector.is_unit()
        assert pair.residual < 1e-10

    def test_ground_state_without_symmetry(self) -> None:
        operator = lmg_hamiltonian(20, 1.0, 0.5, 1.2)
        pair = ground_state(operator)
        assert pair.value == pytest.approx(eigh(operator).lo, abs=1e-12)
        assert pair.gap is not None and pair.gap > 0
        assert not pair.degenerate

    def test_phase_convention(self) -> None:
        pair = ground_state(cw_hamiltonian(10, 1.0, 0.5))
        lead = pair.vector.coeffs[np.flatnonzero(np.abs(pair.vector.coeffs) > 1e-8)[0]]
        assert lead.imag == pytest.approx(0.0, abs=1e-15)
        assert lead.real > 0

    def test_sector_requires_symmetry(self) -> None:
        with pytest.raises(PreconditionError):
            ground_state(cw_hamiltonian(4, 1.0, 0.5), sector=1)

    def test_eigenpair_by_energy(self) -> None:
        pair = eigenpair(quantize(Z, 4), energy=0.3)
        assert pair.value == pytest.approx(1 / 3)
        assert pair.index == 3
        assert abs(pair.vector.coeffs[1]) == pytest.approx(1.0)

    def test_eigenpair_by_index_in_sector(self) -> None:
        operator = cw_hamiltonian(12, 1.0, 0.5)
        pair = eigenpair(operator, index=1, symmetry=z2_flip(), sector=1)
        assert pair.residual < 1e-10
        assert min(abs(pair.value - v) for v in eigh(operator).eigenvalues) < 1e-10
        np.testing.assert_allclose(z2_flip().apply(pair.vector).coeffs, pair.vector.coeffs, atol=1e-12)

    def test_eigenpair_residual_is_at_solver_precision(self) -> None:
        operator = lmg_hamiltonian(200, 1.0, 0.5, 0.3)
        pair = eigenpair(operator, index=7)
        assert pair.value == pytest.approx(eigh(operator).eigenvalues[7], abs=1e-13)
        assert pair.residual < 1e-13

    @pytest.mark.parametrize("kwargs", [{}, {"index": 0, "energy": 0.0}])
    def test_eigenpair_needs_exactly_one_rule(self, kwargs: dict) -> None:
        with pytest.raises(PreconditionError):
            eigenpair(quantize(Z, 4), **kwargs)

    def test_eigenpair_index_out_of_range(self) -> None:
        with pytest.raises(PreconditionError):
            eigenpair(quantize(Z, 4), index=5)


class TestOperatorNorm:
    """Tests for spectral norms."""

    @pytest.mark.parametrize("n_sites", [1, 10, 100])
    def test_coordinate_norm(self, n_sites: int) -> None:
        norm = operator_norm(quantize(SpherePolynomial.coordinate("x"), n_sites))
        assert norm == pytest.approx(n_sites / (n_sites + 2), abs=1e-12)

    def test_non_hermitian(self) -> None:
        shift = QuantizedOperator.from_bands(5, {1: np.ones(5)})
        assert operator_norm(shift) == pytest.approx(1.0, abs=1e-12)

    def test_zero(self) -> None:
        assert operator_norm(QuantizedOperator.zeros(3, 1)) == 0.0


class TestChecks:
    """Tests for range/spectrum distances and perturbation bounds."""

    def test_spectrum_distance_example(self) -> None:
        spectrum = Spectrum(2, np.array([0.0, 0.5, 1.0]))
        assert spectrum_distance(RealInterval(0.0, 1.0), spectrum) == pytest.approx(0.25)

    def test_spectrum_distance_endpoints(self) -> None:
        spectrum = Spectrum(1, np.array([0.4, 0.6]))
        assert spectrum_distance(RealInterval(0.0, 1.0), spectrum) == pytest.approx(0.4)

    def test_containment_excess(self) -> None:
        interval = RealInterval(0.0, 1.0)
        assert containment_excess(interval, Spectrum(2, np.array([-0.2, 0.5, 1.1]))) == pytest.approx(0.2)
        assert containment_excess(interval, Spectrum(1, np.array([0.1, 0.9]))) == 0.0

    def test_weyl_check_passes(self) -> None:
        report = weyl_check(create_model(CW).symbol(), 16)
        assert report.passed
        assert report.max_gap <= report.bound + 1e-10

    def test_weyl_violation(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(SymbolExpansion, "correction_bound", lambda self, n_sites: -1.0)
        symbol = create_model(CW).symbol()
        assert not weyl_check(symbol, 8, strict=False).passed
        with pytest.raises(InvariantViolationError):
            weyl_check(symbol, 8)

    @pytest.mark.parametrize("n_sites", [4, 50, 300])
    def test_quasi_eigenvector_defect_at_pole(self, n_sites: int) -> None:
        defect = quasi_eigenvector_defect(Z, 1.0, SpherePoint.north_pole(), n_sites)
        assert defect == pytest.approx(2.0 / (n_sites + 2), abs=1e-13)

    def test_quasi_eigenvector_defect_decays_at_minima(self) -> None:
        h0 = create_model(CW).principal_symbol
        minimum = SpherePoint.from_cartesian(0.5, 0.0, np.sqrt(3) / 2)
        defects = [quasi_eigenvector_defect(h0, -5 / 8, minimum, n) for n in (32, 64, 128)]
        assert defects[0] > defects[1] > defects[2]

    def test_quasi_eigenvector_needs_level_point(self) -> None:
        with pytest.raises(PreconditionError):
            quasi_eigenvector_defect(Z, 1.0, SpherePoint.south_pole(), 8)
