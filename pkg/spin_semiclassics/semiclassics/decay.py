"""Decay diagnostics for quantities tracked along geometric N-grids."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from spin_semiclassics.models.schemas import DecayReport, Verdict

logger = logging.getLogger(__name__)

NUMERICAL_FLOOR = 1e-13
MONOTONE_SLACK = 0.10


def doubling_ratios(values: Sequence[float], floor: float = NUMERICAL_FLOOR) -> list[float | None]:
    """``values[i] / values[i+1]``; ``None`` where either value is below ``floor``."""
    out: list[float | None] = []
    for a, b in zip(values[:-1], values[1:]):
        out.append(None if abs(a) < floor or abs(b) < floor else abs(a) / abs(b))
    return out


def decay_exponent(n_grid: Sequence[int], values: Sequence[float], floor: float = NUMERICAL_FLOOR) -> float | None:
    """Least-squares ``p`` in ``value ≈ C·N^{−p}`` over points above ``floor``."""
    pairs = [(n, abs(v)) for n, v in zip(n_grid, values) if abs(v) >= floor]
    if len(pairs) < 2:
        return None
    logs = np.log(np.array(pairs, dtype=float))
    slope, _ = np.polyfit(logs[:, 0], logs[:, 1], 1)
    return float(-slope)


def is_monotone_decreasing(
    values: Sequence[float], slack: float = MONOTONE_SLACK, floor: float = NUMERICAL_FLOOR
) -> bool:
    """Whether each value is at most ``(1 + slack)`` times its predecessor (floor values always pass)."""
    return all(b <= a * (1.0 + slack) or abs(b) < floor for a, b in zip(values[:-1], values[1:]))


def decay_verdict(
    values: Sequence[float],
    target_scale: float = 0.0,
    slack: float = MONOTONE_SLACK,
    floor: float = NUMERICAL_FLOOR,
) -> Verdict:
    """Classify a residual sequence.

    ``converging`` when residuals decrease (within ``slack``) and the last one is
    below ``0.02·(1 + |target_scale|)``; ``diverging`` when the last residual
    exceeds the first by more than ``slack``; ``inconclusive`` otherwise.
    """
    if not values or any(not math.isfinite(v) for v in values):
        return "inconclusive"
    magnitudes = [abs(v) for v in values]
    if is_monotone_decreasing(magnitudes, slack, floor) and magnitudes[-1] < 0.02 * (1.0 + abs(target_scale)):
        return "converging"
    if magnitudes[-1] > magnitudes[0] * (1.0 + slack) and magnitudes[-1] >= floor:
        return "diverging"
    return "inconclusive"


def decay_report(n_grid: Sequence[int], values: Sequence[float], target_scale: float = 0.0) -> DecayReport:
    """Bundle ratios, exponent and verdict for a tracked quantity."""
    return DecayReport(
        n_grid=list(n_grid),
        values=[float(v) for v in values],
        ratios=doubling_ratios(values),
        exponent=decay_exponent(n_grid, values),
        verdict=decay_verdict(values, target_scale),
    )


def geometric_grid(start: int, stop: int, factor: int = 2) -> list[int]:
    """``start, start·factor, …`` up to and including ``stop``."""
    if start < 1 or factor < 2 or stop < start:
        raise ValueError(f"Invalid geometric grid {start}:{stop}:{factor}")
    grid = []
    n = start
    while n <= stop:
        grid.append(n)
        n *= factor
    return grid
