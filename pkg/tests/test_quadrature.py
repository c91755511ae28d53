"""Tests for quadrature rules and Dicke amplitude tables."""

import math

import numpy as np
import pytest

from spin_semiclassics.quantization.quadrature import (
    dicke_amplitudes,
    gauss_legendre,
    log_binomials,
    product_rule_sizes,
)


class TestQuadrature:
    """Tests for the shared quadrature helpers."""

    def test_gauss_legendre_exactness(self) -> None:
        nodes, weights = gauss_legendre(5)
        assert float(weights @ nodes**8) == pytest.approx(2 / 9, abs=1e-14)
        assert not nodes.flags.writeable

    def test_log_binomials(self) -> None:
        np.testing.assert_allclose(np.exp(log_binomials(6)), [math.comb(6, k) for k in range(7)], rtol=1e-12)

    @pytest.mark.parametrize("n", [1, 10, 5000])
    def test_amplitudes_are_unit_vectors(self, n: int) -> None:
        amps = dicke_amplitudes(n, np.array([-1.0, -0.3, 0.0, 0.8, 1.0]))
        assert amps.shape == (n + 1, 5)
        np.testing.assert_allclose(np.sum(amps**2, axis=0), 1.0, atol=1e-9)

    def test_amplitudes_match_exact_binomials(self) -> None:
        n = 60
        exact = [math.comb(n, k) * 0.6 ** (n - k) * 0.4**k for k in range(n + 1)]
        amps = dicke_amplitudes(n, np.array([0.2]))[:, 0]
        np.testing.assert_allclose(amps**2, exact, rtol=1e-12)

    def test_amplitudes_at_poles(self) -> None:
        amps = dicke_amplitudes(4, np.array([1.0, -1.0]))
        np.testing.assert_allclose(amps[:, 0], [1, 0, 0, 0, 0], atol=1e-15)
        np.testing.assert_allclose(amps[:, 1], [0, 0, 0, 0, 1], atol=1e-15)

    def test_product_rule_sizes(self) -> None:
        assert product_rule_sizes(10, 3) == (14, 7)
        assert product_rule_sizes(1, 0) == (2, 1)
