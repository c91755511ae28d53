"""Tests for the Fock-Bargmann representation."""

import numpy as np
import pytest

from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.quantization.bargmann import (
    BargmannFunction,
    bargmann_transform,
    inverse_stereographic,
    stereographic,
)
from spin_semiclassics.quantization.berezin import husimi_density
from spin_semiclassics.quantization.dicke import DickeVector, coherent_state
from spin_semiclassics.utils.exceptions import PreconditionError


class TestStereographic:
    """Tests for the stereographic chart."""

    def test_round_trip(self) -> None:
        for point in (SpherePoint(0.3, 1.2), SpherePoint(2.9, -2.0), SpherePoint.north_pole()):
            back = inverse_stereographic(stereographic(point))
            np.testing.assert_allclose(back.xyz, point.xyz, atol=1e-12)

    def test_north_pole_is_origin(self) -> None:
        assert stereographic(SpherePoint.north_pole()) == 0

    def test_south_pole_rejected(self) -> None:
        with pytest.raises(PreconditionError):
            stereographic(SpherePoint.south_pole())


class TestBargmannFunction:
    """Tests for Bargmann functions of Dicke vectors."""

    def test_value_is_coherent_overlap(self) -> None:
        psi = DickeVector.random(np.random.default_rng(6), 8)
        function = bargmann_transform(psi)
        for point in (SpherePoint(0.5, 0.2), SpherePoint(2.0, -1.4)):
            expected = coherent_state(8, point).inner(psi)
            assert function(stereographic(point)) == pytest.approx(expected, abs=1e-13)

    def test_modulus_squared_is_husimi(self) -> None:
        psi = DickeVector.random(np.random.default_rng(8), 15)
        function = bargmann_transform(psi)
        point = SpherePoint(1.3, 0.6)
        assert abs(function(stereographic(point))) ** 2 == pytest.approx(husimi_density(psi, point), abs=1e-13)

    def test_vectorized_evaluation(self) -> None:
        function = bargmann_transform(DickeVector.random(np.random.default_rng(0), 5))
        zs = np.array([0.1 + 0.2j, -3.0 + 0.5j])
        values = function(zs)
        assert values.shape == (2,)
        assert values[1] == pytest.approx(function(zs[1]), abs=1e-14)

    @pytest.mark.parametrize("n_sites", [1, 5, 30])
    def test_transform_is_isometric(self, n_sites: int) -> None:
        psi = DickeVector.random(np.random.default_rng(n_sites), n_sites)
        scaled = DickeVector(n_sites, 2.5 * psi.coeffs)
        assert bargmann_transform(scaled).norm() == pytest.approx(2.5, rel=1e-10)

    def test_monomial_coefficients(self) -> None:
        function = BargmannFunction(2, np.array([1.0, 1.0, 1.0]))
        np.testing.assert_allclose(function.monomial_coefficients(), [1.0, np.sqrt(2.0), 1.0])

    def test_inverse(self) -> None:
        psi = DickeVector.random(np.random.default_rng(2), 4)
        np.testing.assert_array_equal(bargmann_transform(psi).to_dicke().coeffs, psi.coeffs)

    def test_wrong_length(self) -> None:
        with pytest.raises(PreconditionError):
            BargmannFunction(3, np.ones(3))
