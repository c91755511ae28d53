"""Distances between symbol ranges and spectra, and perturbation checks."""

from __future__ import annotations

import logging

import numpy as np

from spin_semiclassics.hamiltonians.base import SymbolExpansion
from spin_semiclassics.models.schemas import WeylReport
from spin_semiclassics.polynomials.points import RealInterval, SpherePoint
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, evaluate, reduce_mod_sphere
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.dicke import coherent_state
from spin_semiclassics.spectral.eigen import Spectrum, eigh
from spin_semiclassics.utils.exceptions import InvariantViolationError, PreconditionError

logger = logging.getLogger(__name__)

WEYL_TOLERANCE = 1e-10
LEVEL_TOLERANCE = 1e-8


def spectrum_distance(interval: RealInterval, spectrum: Spectrum) -> float:
    """One-sided distance ``sup_{x ∈ [lo, hi]} inf_{λ ∈ σ} |x − λ|``.

    The supremum is attained at an endpoint or at the midpoint of two
    consecutive eigenvalues lying inside the interval.
    """
    values = spectrum.eigenvalues
    if len(values) == 0:
        raise PreconditionError("Spectrum is empty")
    best = max(float(np.min(np.abs(values - interval.lo))), float(np.min(np.abs(values - interval.hi))))
    midpoints = 0.5 * (values[1:] + values[:-1])
    inside = (midpoints >= interval.lo) & (midpoints <= interval.hi)
    if inside.any():
        best = max(best, float(0.5 * np.diff(values)[inside].max()))
    return best


def containment_excess(interval: RealInterval, spectrum: Spectrum) -> float:
    """How far the spectrum extends outside the interval (0 when contained)."""
    return max(0.0, interval.lo - spectrum.lo, spectrum.hi - interval.hi)


def weyl_check(symbol: SymbolExpansion, n_sites: int, strict: bool = True) -> WeylReport:
    """Compare the spectra of ``Q(h_N)`` and ``Q(h0)`` against ``Σ_k N^{−k} ‖h_k‖_∞``.

    Args:
        symbol: Expansion to check.
        n_sites: Number of spins N.
        strict: Raise on violation instead of only reporting it.

    Returns:
        The largest ordered-eigenvalue shift and the bound.

    Raises:
        InvariantViolationError: If ``strict`` and the shift exceeds the bound.
    """
    full = eigh(symbol.quantize(n_sites)).eigenvalues
    principal = eigh(quantize(reduce_mod_sphere(symbol.h0), n_sites)).eigenvalues
    max_gap = float(np.max(np.abs(full - principal)))
    bound = symbol.correction_bound(n_sites)
    passed = max_gap <= bound + WEYL_TOLERANCE
    report = WeylReport(N=n_sites, max_gap=max_gap, bound=bound, passed=passed)
    if not passed:
        logger.error("Weyl bound violated at N=%d: %.6g > %.6g", n_sites, max_gap, bound)
        if strict:
            raise InvariantViolationError(f"Weyl bound violated at N={n_sites}: {max_gap!r} > {bound!r}")
    return report


def quasi_eigenvector_defect(h0: SpherePolynomial, energy: float, point: SpherePoint, n_sites: int) -> float:
    """``‖Q(h0) v^(Ω) − E v^(Ω)‖`` for a point on the level set ``h0 = E``.

    Raises:
        PreconditionError: If ``|h0(Ω) − E| > 1e-8``.
    """
    level = evaluate(h0, point).real
    if abs(level - energy) > LEVEL_TOLERANCE:
        raise PreconditionError(f"h0({point}) = {level!r} differs from E = {energy!r}")
    v = coherent_state(n_sites, point).coeffs
    applied = quantize(reduce_mod_sphere(h0), n_sites).matvec(v)
    return float(np.linalg.norm(applied - energy * v))
