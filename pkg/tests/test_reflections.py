"""Tests for the order-two symmetries and their sector decompositions."""

import numpy as np
import pytest

from spin_semiclassics.hamiltonians.registry import cw_hamiltonian, lmg_hamiltonian
from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.quantization.berezin import husimi_density, quantize
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.reflections import Reflection, z2_flip, z_rotation_pi
from spin_semiclassics.utils.exceptions import PreconditionError

REFLECTIONS = [z2_flip(), z_rotation_pi()]


class TestPointMaps:
    """Tests for the action on the sphere."""

    def test_flip(self) -> None:
        image = z2_flip().map_point(SpherePoint.from_cartesian(0.2, 0.3, 0.9))
        np.testing.assert_allclose(image.xyz, SpherePoint.from_cartesian(0.2, -0.3, -0.9).xyz, atol=1e-15)

    def test_z_rotation(self) -> None:
        image = z_rotation_pi().map_point(SpherePoint.from_cartesian(0.2, 0.3, 0.9))
        np.testing.assert_allclose(image.xyz, SpherePoint.from_cartesian(-0.2, -0.3, 0.9).xyz, atol=1e-15)


class TestUnitaries:
    """Tests for the Dicke-basis implementations."""

    @pytest.mark.parametrize("reflection", REFLECTIONS, ids=lambda r: r.name)
    def test_involution(self, reflection: Reflection) -> None:
        psi = DickeVector.random(np.random.default_rng(0), 9)
        twice = reflection.apply(reflection.apply(psi))
        np.testing.assert_allclose(twice.coeffs, psi.coeffs, atol=1e-15)
        u = reflection.unitary(9).toarray()
        np.testing.assert_allclose(u @ u.conj().T, np.eye(10), atol=1e-15)

    def test_flip_reverses_indices(self) -> None:
        assert z2_flip().apply(DickeVector.basis(5, 1)).coeffs[4] == 1.0

    @pytest.mark.parametrize("n_sites", [5, 6, 31])
    def test_symmetries_of_models(self, n_sites: int) -> None:
        assert z2_flip().commutes_with(cw_hamiltonian(n_sites, 1.0, 0.5))
        assert z_rotation_pi().commutes_with(lmg_hamiltonian(n_sites, 1.0, 0.5, 0.3))
        assert not z_rotation_pi().commutes_with(cw_hamiltonian(n_sites, 1.0, 0.5))

    def test_conjugation_reflects_symbols(self) -> None:
        q_z = quantize(SpherePolynomial.coordinate("z"), 8)
        q_x = quantize(SpherePolynomial.coordinate("x"), 8)
        assert z2_flip().conjugate(q_z).allclose(-q_z)
        assert z2_flip().conjugate(q_x).allclose(q_x)
        assert z_rotation_pi().conjugate(q_x).allclose(-q_x)

    @pytest.mark.parametrize("reflection", REFLECTIONS, ids=lambda r: r.name)
    def test_husimi_covariance(self, reflection: Reflection) -> None:
        psi = DickeVector.random(np.random.default_rng(4), 11)
        image = reflection.apply(psi)
        for point in (SpherePoint(0.3, 0.4), SpherePoint(2.2, -2.9), SpherePoint.north_pole()):
            expected = husimi_density(psi, reflection.map_point(point))
            assert husimi_density(image, point) == pytest.approx(expected, abs=1e-13)


class TestSectors:
    """Tests for sector bases, restriction and lifting."""

    @pytest.mark.parametrize("reflection", REFLECTIONS, ids=lambda r: r.name)
    @pytest.mark.parametrize("n_sites", [1, 6, 9])
    def test_bases_are_orthonormal_and_complete(self, reflection: Reflection, n_sites: int) -> None:
        plus = reflection.sector_basis(n_sites, 1).toarray()
        minus = reflection.sector_basis(n_sites, -1).toarray()
        assert plus.shape[1] + minus.shape[1] == n_sites + 1
        both = np.hstack([plus, minus])
        np.testing.assert_allclose(both.conj().T @ both, np.eye(n_sites + 1), atol=1e-15)

    @pytest.mark.parametrize("reflection", REFLECTIONS, ids=lambda r: r.name)
    def test_basis_vectors_are_eigenvectors(self, reflection: Reflection) -> None:
        u = reflection.unitary(7).toarray()
        for sector in (1, -1):
            basis = reflection.sector_basis(7, sector).toarray()
            np.testing.assert_allclose(u @ basis, sector * basis, atol=1e-15)

    def test_restricted_spectra_partition_the_spectrum(self) -> None:
        h = cw_hamiltonian(6, 1.0, 0.5)
        flip = z2_flip()
        parts = [flip.restrict(h, sector) for sector in (1, -1)]
        values = np.concatenate([np.linalg.eigvalsh(p.to_dense()) for p in parts])
        np.testing.assert_allclose(np.sort(values), np.linalg.eigvalsh(h.to_dense()), atol=1e-13)

    def test_one_dimensional_sector_is_dense(self) -> None:
        restricted = z2_flip().restrict(cw_hamiltonian(1, 1.0, 0.5), 1)
        assert isinstance(restricted, np.ndarray)
        assert restricted.shape == (1, 1)

    def test_lift(self) -> None:
        flip = z2_flip()
        psi = flip.lift(np.array([1.0, 0.0, 0.0]), 5, -1)
        np.testing.assert_allclose(flip.apply(psi).coeffs, -psi.coeffs, atol=1e-15)
        assert psi.is_unit()

    def test_invalid_sector(self) -> None:
        with pytest.raises(PreconditionError):
            z2_flip().sector_basis(4, 0)
