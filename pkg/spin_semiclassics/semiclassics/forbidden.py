"""Husimi mass of eigenvectors in classically forbidden regions."""

from __future__ import annotations

import logging

from spin_semiclassics.core.parallel import map_jobs
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.models.schemas import DecayReport, ForbiddenRecord, ModelSpec
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.quantization.berezin import husimi_mass, level_band_region
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.semiclassics.decay import decay_report
from spin_semiclassics.semiclassics.limits import StateSelector, target_energy
from spin_semiclassics.utils.exceptions import PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_MARGIN = 0.2


def forbidden_region_mass(
    psi: DickeVector, h0: SpherePolynomial, energy: float, margin: float = DEFAULT_MARGIN
) -> float:
    """Husimi mass of ``ψ`` on ``{Ω : |h0(Ω) − E| ≥ margin}``.

    Raises:
        PreconditionError: If ``margin`` is not positive.
    """
    if margin <= 0:
        raise PreconditionError(f"margin must be positive, got {margin!r}")
    return husimi_mass(psi, level_band_region(h0, energy, margin))


def _forbidden_job(args: tuple[ModelSpec, StateSelector, int, float, float]) -> ForbiddenRecord:
    spec, selector, n_sites, target, margin = args
    model = create_model(spec)
    pair = selector.select(model, n_sites)
    mass = forbidden_region_mass(pair.vector, model.principal_symbol, target, margin)
    logger.debug("N=%d: eigenvalue %r, forbidden mass %.6g", n_sites, pair.value, mass)
    return ForbiddenRecord(N=n_sites, energy=pair.value, target_energy=target, margin=margin, mass=mass)


def forbidden_region_study(
    spec: ModelSpec,
    n_grid: list[int],
    margin: float = DEFAULT_MARGIN,
    selector: StateSelector | None = None,
    workers: int | None = 1,
) -> tuple[list[ForbiddenRecord], DecayReport]:
    """Forbidden-region mass of tracked eigenvectors along an N-grid.

    The region is taken around the classical energy the eigenvalues approach
    (``min h0`` for the ground state), so it does not move with N.

    Returns:
        Per-N records and the decay summary of the masses.
    """
    if margin <= 0:
        raise PreconditionError(f"margin must be positive, got {margin!r}")
    selector = selector or StateSelector(index=0)
    model = create_model(spec)
    target = target_energy(model.principal_symbol, selector)
    records = map_jobs(_forbidden_job, [(spec, selector, n, target, margin) for n in n_grid], workers)
    report = decay_report(n_grid, [r.mass for r in records])
    logger.info(
        "Forbidden mass for %s (%s, margin %r): final %.3g, %s",
        spec.label(),
        selector.describe(),
        margin,
        records[-1].mass if records else float("nan"),
        report.verdict,
    )
    return records, report
