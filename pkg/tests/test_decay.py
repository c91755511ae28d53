"""Tests for decay diagnostics on N-grids."""

import pytest

from spin_semiclassics.semiclassics.decay import (
    decay_exponent,
    decay_report,
    decay_verdict,
    doubling_ratios,
    geometric_grid,
    is_monotone_decreasing,
)


class TestDecay:
    """Tests for ratios, exponents and verdicts."""

    def test_doubling_ratios(self) -> None:
        assert doubling_ratios([4.0, 2.0, 1.0]) == [2.0, 2.0]

    def test_ratios_below_floor_are_none(self) -> None:
        assert doubling_ratios([1.0, 1e-15, 1e-16]) == [None, None]

    def test_exponent_of_power_law(self) -> None:
        grid = [8, 16, 32, 64]
        assert decay_exponent(grid, [1.0 / n**2 for n in grid]) == pytest.approx(2.0)

    def test_exponent_needs_two_points(self) -> None:
        assert decay_exponent([8, 16], [1.0, 0.0]) is None

    def test_monotone_with_slack(self) -> None:
        assert is_monotone_decreasing([1.0, 1.05, 0.5])
        assert not is_monotone_decreasing([1.0, 1.2, 0.5])
        assert is_monotone_decreasing([1e-3, 0.0, 1e-14])

    @pytest.mark.parametrize(
        ("values", "verdict"),
        [
            ([0.1, 0.05, 0.01], "converging"),
            ([0.1, 0.2, 0.4], "diverging"),
            ([0.5, 0.4, 0.3], "inconclusive"),
            ([], "inconclusive"),
            ([0.1, float("nan")], "inconclusive"),
        ],
    )
    def test_verdicts(self, values: list[float], verdict: str) -> None:
        assert decay_verdict(values) == verdict

    def test_target_scale_relaxes_threshold(self) -> None:
        assert decay_verdict([0.1, 0.05, 0.03]) == "inconclusive"
        assert decay_verdict([0.1, 0.05, 0.03], target_scale=1.0) == "converging"

    def test_report(self) -> None:
        report = decay_report([8, 16, 32], [0.04, 0.02, 0.01])
        assert report.ratios == [2.0, 2.0]
        assert report.exponent == pytest.approx(1.0)
        assert report.verdict == "converging"


class TestGeometricGrid:
    """Tests for geometric N-grids."""

    def test_powers_of_two(self) -> None:
        assert geometric_grid(64, 1024) == [64, 128, 256, 512, 1024]

    def test_stop_need_not_be_on_grid(self) -> None:
        assert geometric_grid(2, 30, 3) == [2, 6, 18]

    @pytest.mark.parametrize(("start", "stop", "factor"), [(0, 8, 2), (8, 4, 2), (2, 8, 1)])
    def test_invalid(self, start: int, stop: int, factor: int) -> None:
        with pytest.raises(ValueError):
            geometric_grid(start, stop, factor)
