"""Tests for sphere polynomials, points and their text format."""

import math

import numpy as np
import pytest

from spin_semiclassics.polynomials.points import (
    RealInterval,
    SpherePoint,
    cartesian_to_angles,
    fibonacci_sphere,
    geodesic_distance,
)
from spin_semiclassics.polynomials.sphere_polynomial import (
    SpherePolynomial,
    as_polynomials,
    canonical_monomials,
    evaluate,
    poisson_bracket,
    random_polynomial,
    reduce_mod_sphere,
)
from spin_semiclassics.utils.exceptions import PolynomialError

X = SpherePolynomial.coordinate("x")
Y = SpherePolynomial.coordinate("y")
Z = SpherePolynomial.coordinate("z")


def _random_points(count: int, seed: int = 0) -> list[SpherePoint]:
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((count, 3))
    return [SpherePoint.from_cartesian(*v) for v in vectors]


class TestParse:
    """Tests for the plain-text polynomial format."""

    def test_signed_terms(self) -> None:
        p = SpherePolynomial.parse("-0.5 z^2 - 0.5 x")
        assert p.coefficient((0, 0, 2)) == -0.5
        assert p.coefficient((1, 0, 0)) == -0.5
        assert len(p.terms) == 2

    def test_optional_star_and_whitespace(self) -> None:
        assert SpherePolynomial.parse("2*x*y^2") == SpherePolynomial.parse("2 x y^2")

    def test_repeated_variables_multiply(self) -> None:
        assert SpherePolynomial.parse("x x") == SpherePolynomial.parse("x^2")

    def test_complex_coefficient(self) -> None:
        p = SpherePolynomial.parse("(1+2j) x y")
        assert p.coefficient((1, 1, 0)) == 1 + 2j
        assert not p.is_real

    def test_like_terms_combine(self) -> None:
        p = SpherePolynomial.parse("x + 2 x - 3 x")
        assert p.is_zero

    def test_to_text_round_trip(self) -> None:
        for text in ("-0.5 z^2 - 0.5 x", "x y z + 0.25", "(1.5-2j) x^3 - y", "-x"):
            p = SpherePolynomial.parse(text)
            assert SpherePolynomial.parse(p.to_text()) == p

    def test_zero_text(self) -> None:
        assert SpherePolynomial().to_text() == "0"
        assert SpherePolynomial.parse("0").is_zero

    @pytest.mark.parametrize("text", ["", "w", "x^-1", "x + + y", "x^2.5", "(1+) x"])
    def test_malformed_text_raises(self, text: str) -> None:
        with pytest.raises(PolynomialError):
            SpherePolynomial.parse(text)

    def test_as_polynomials_passes_instances_through(self) -> None:
        parsed = as_polynomials(["x", Y])
        assert parsed == [X, Y]


class TestSpherePolynomial:
    """Tests for construction, algebra and evaluation."""

    def test_degree_cap(self) -> None:
        with pytest.raises(PolynomialError, match="degree cap"):
            SpherePolynomial({(65, 0, 0): 1.0})

    def test_negative_exponent_rejected(self) -> None:
        with pytest.raises(PolynomialError):
            SpherePolynomial({(-1, 0, 0): 1.0})

    def test_tiny_coefficients_pruned(self) -> None:
        assert SpherePolynomial({(1, 0, 0): 1e-17}).is_zero

    def test_unknown_coordinate(self) -> None:
        with pytest.raises(PolynomialError):
            SpherePolynomial.coordinate("w")

    def test_algebra(self) -> None:
        p = (X + 1) * (X - 1)
        assert p == SpherePolynomial.parse("x^2 - 1")
        assert (2 * X - X) == X
        assert (X**3).degree == 3
        assert (X / 2).coefficient((1, 0, 0)) == 0.5

    def test_negative_power_rejected(self) -> None:
        with pytest.raises(PolynomialError):
            _ = X**-1

    def test_conj(self) -> None:
        p = SpherePolynomial.parse("(1+2j) x")
        assert p.conj().coefficient((1, 0, 0)) == 1 - 2j
        assert p.real().is_real

    def test_derivative(self) -> None:
        p = SpherePolynomial.parse("x^2 y + 3 z")
        dx, dy, dz = p.gradient()
        assert dx == SpherePolynomial.parse("2 x y")
        assert dy == SpherePolynomial.parse("x^2")
        assert dz == SpherePolynomial.constant(3.0)

    def test_evaluate_matches_vectorized(self) -> None:
        p = SpherePolynomial.parse("x^2 y - 0.5 z + 0.1 x y z")
        points = _random_points(20)
        xyz = np.array([q.xyz for q in points])
        vectorized = p.evaluate_xyz(xyz[:, 0], xyz[:, 1], xyz[:, 2])
        scalar = np.array([evaluate(p, q).real for q in points])
        np.testing.assert_allclose(vectorized, scalar, atol=1e-14)

    def test_call_evaluates(self) -> None:
        assert Z(SpherePoint.north_pole()) == pytest.approx(1.0)


class TestReduceModSphere:
    """Tests for canonical reduction modulo x² + y² + z² = 1."""

    def test_z_squared(self) -> None:
        reduced = reduce_mod_sphere(Z**2)
        assert reduced == SpherePolynomial.parse("1 - x^2 - y^2")
        assert reduced.canonical

    def test_canonical_input_unchanged(self) -> None:
        p = SpherePolynomial.parse("x z + y")
        assert reduce_mod_sphere(p) is p

    def test_agrees_on_sphere(self) -> None:
        p = SpherePolynomial.parse("z^5 - 2 x z^4 + y^2 z^3 + 0.3")
        reduced = reduce_mod_sphere(p)
        assert reduced.canonical
        for point in _random_points(25, seed=3):
            assert evaluate(reduced, point) == pytest.approx(evaluate(p, point), abs=1e-12)

    def test_sphere_relation_vanishes(self) -> None:
        assert reduce_mod_sphere(X**2 + Y**2 + Z**2 - 1).is_zero

    def test_allclose_compares_on_sphere(self) -> None:
        assert (Z**2).allclose(1 - X**2 - Y**2)


class TestPoissonBracket:
    """Tests for the sphere Poisson bracket."""

    def test_coordinate_brackets_are_cyclic(self) -> None:
        assert poisson_bracket(X, Y).allclose(Z)
        assert poisson_bracket(Y, Z).allclose(X)
        assert poisson_bracket(Z, X).allclose(Y)

    def test_antisymmetry(self) -> None:
        f = SpherePolynomial.parse("x^2 y + z")
        g = SpherePolynomial.parse("y z - x")
        assert poisson_bracket(f, g).allclose(-poisson_bracket(g, f))

    def test_leibniz_rule(self) -> None:
        f = SpherePolynomial.parse("x y")
        g = SpherePolynomial.parse("z + x")
        h = SpherePolynomial.parse("y^2")
        left = poisson_bracket(f, g * h)
        right = poisson_bracket(f, g) * h + g * poisson_bracket(f, h)
        assert left.allclose(right)

    def test_casimir_is_central(self) -> None:
        f = SpherePolynomial.parse("x^3 - y z")
        assert poisson_bracket(f, X**2 + Y**2 + Z**2).is_zero


class TestMonomials:
    """Tests for canonical monomials and random symbols."""

    def test_low_degree_listing(self) -> None:
        assert canonical_monomials(1) == [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]

    @pytest.mark.parametrize("degree", [0, 1, 2, 4, 7])
    def test_count_is_square(self, degree: int) -> None:
        monos = canonical_monomials(degree)
        assert len(monos) == (degree + 1) ** 2
        assert all(c <= 1 for _, _, c in monos)

    def test_random_polynomial_is_seeded(self) -> None:
        first = random_polynomial(np.random.default_rng(7), 4)
        second = random_polynomial(np.random.default_rng(7), 4)
        assert first == second
        assert first.canonical and first.is_real

    def test_random_complex_polynomial(self) -> None:
        p = random_polynomial(np.random.default_rng(1), 3, complex_coefficients=True)
        assert not p.is_real


class TestPoints:
    """Tests for sphere points and point sets."""

    def test_poles(self) -> None:
        south = SpherePoint.from_cartesian(0.0, 0.0, -2.0)
        assert south.theta == math.pi
        assert south.phi == 0.0
        np.testing.assert_allclose(SpherePoint.north_pole().xyz, [0.0, 0.0, 1.0])

    def test_from_cartesian_projects(self) -> None:
        p = SpherePoint.from_cartesian(3.0, 4.0, 0.0)
        np.testing.assert_allclose(p.xyz, [0.6, 0.8, 0.0], atol=1e-15)

    def test_origin_rejected(self) -> None:
        with pytest.raises(ValueError):
            SpherePoint.from_cartesian(0.0, 0.0, 0.0)

    def test_angles_folded_through_pole(self) -> None:
        folded = SpherePoint(-0.1, 0.0)
        np.testing.assert_allclose(folded.xyz, SpherePoint(0.1, math.pi).xyz, atol=1e-15)
        assert 0.0 <= folded.theta <= math.pi

    def test_geodesic_distance(self) -> None:
        assert SpherePoint.north_pole().geodesic_distance(SpherePoint.south_pole()) == pytest.approx(math.pi)
        assert geodesic_distance(np.array([1.0, 0, 0]), np.array([0, 1.0, 0])) == pytest.approx(math.pi / 2)

    def test_fibonacci_sphere(self) -> None:
        pts = fibonacci_sphere(500)
        assert pts.shape == (500, 3)
        np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-14)
        assert abs(pts.mean(axis=0)).max() < 0.02
        assert not pts.flags.writeable

    def test_cartesian_to_angles(self) -> None:
        theta, phi = cartesian_to_angles(np.array([[0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]))
        np.testing.assert_allclose(theta, [math.pi / 2, math.pi])
        assert phi[0] == pytest.approx(math.pi / 2)

    def test_interval(self) -> None:
        interval = RealInterval(-1.0, 2.0)
        assert interval.width == 3.0
        assert interval.contains(2.05, tol=0.1)
        assert not interval.contains(2.05)
        with pytest.raises(ValueError):
            RealInterval(1.0, 0.0)
