"""Tests for ranges, sup norms and critical points on the sphere."""

import math

import pytest

from spin_semiclassics.polynomials.optimization import critical_points, sup_norm, value_range
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.utils.exceptions import PolynomialError

CW_H0 = SpherePolynomial.parse("-0.5 z^2 - 0.5 x")


class TestValueRange:
    """Tests for value_range and sup_norm."""

    def test_coordinate_range(self) -> None:
        interval = value_range(SpherePolynomial.coordinate("z"))
        assert interval.lo == pytest.approx(-1.0, abs=1e-12)
        assert interval.hi == pytest.approx(1.0, abs=1e-12)
        assert interval.argmin.z == pytest.approx(-1.0, abs=1e-6)
        assert interval.argmax.z == pytest.approx(1.0, abs=1e-6)

    def test_curie_weiss_symbol(self) -> None:
        interval = value_range(CW_H0)
        assert interval.lo == pytest.approx(-5.0 / 8.0, abs=1e-10)
        assert interval.hi == pytest.approx(0.5, abs=1e-10)
        assert interval.argmin.x == pytest.approx(0.5, abs=1e-6)

    def test_constant(self) -> None:
        interval = value_range(SpherePolynomial.constant(2.5))
        assert interval.lo == interval.hi == 2.5

    def test_sup_norm(self) -> None:
        assert sup_norm(SpherePolynomial.parse("x - 2")) == pytest.approx(3.0, abs=1e-10)
        assert sup_norm(SpherePolynomial.parse("x y")) == pytest.approx(0.5, abs=1e-10)

    def test_complex_rejected(self) -> None:
        with pytest.raises(PolynomialError):
            value_range(SpherePolynomial.parse("(1+1j) x"))


class TestCriticalPoints:
    """Tests for critical points on a level set."""

    def test_curie_weiss_minima(self) -> None:
        found = critical_points(CW_H0, -5.0 / 8.0)
        assert len(found) == 2
        assert all(c.nondegenerate for c in found)
        upper, lower = found
        assert upper.point.z == pytest.approx(math.sqrt(3) / 2, abs=1e-6)
        assert lower.point.z == pytest.approx(-math.sqrt(3) / 2, abs=1e-6)
        for c in found:
            assert c.point.x == pytest.approx(0.5, abs=1e-6)
            assert c.point.y == pytest.approx(0.0, abs=1e-6)
            assert c.value == pytest.approx(-5.0 / 8.0, abs=1e-10)

    def test_maximum_of_height(self) -> None:
        found = critical_points(SpherePolynomial.coordinate("z"), 1.0)
        assert len(found) == 1
        assert found[0].point.z == pytest.approx(1.0, abs=1e-9)

    def test_regular_level_has_none(self) -> None:
        assert critical_points(SpherePolynomial.coordinate("z"), 0.5) == []

    def test_constant_has_none(self) -> None:
        assert critical_points(SpherePolynomial.constant(1.0), 1.0) == []

    def test_saddle_found(self) -> None:
        # x² − y² has saddles at ±z with value 0
        found = critical_points(SpherePolynomial.parse("x^2 - y^2"), 0.0)
        assert len(found) == 2
        assert {round(c.point.z) for c in found} == {1, -1}
