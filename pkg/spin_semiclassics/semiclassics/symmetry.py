"""Reflection symmetry of eigenvectors and spontaneous symmetry breaking."""

from __future__ import annotations

import logging

import numpy as np

from spin_semiclassics.core.parallel import map_jobs
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.models.schemas import ModelSpec, SSBRecord, SSBReport, Z2Report
from spin_semiclassics.polynomials.optimization import critical_points, value_range
from spin_semiclassics.polynomials.points import SpherePoint, fibonacci_sphere
from spin_semiclassics.quantization.berezin import cap_region, husimi_at, husimi_mass
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.reflections import Reflection, z2_flip
from spin_semiclassics.semiclassics.limits import limit_state_prediction
from spin_semiclassics.spectral.eigen import eigh, ground_state
from spin_semiclassics.utils.exceptions import PreconditionError

logger = logging.getLogger(__name__)

PARITY_TOLERANCE = 1e-8
ASYMMETRY_GRID = 2000
DEFAULT_CAP_RADIUS = 0.3


def z2_check(psi: DickeVector, reflection: Reflection | None = None, grid_size: int = ASYMMETRY_GRID) -> Z2Report:
    """Compare ``ψ`` with its reflection, in the Dicke basis and on the sphere.

    Args:
        psi: Unit vector.
        reflection: Symmetry to test; the flip ``(x, y, z) ↦ (x, −y, −z)`` by default.
        grid_size: Fibonacci points for the Husimi comparison.

    Returns:
        Residuals ``‖Uψ ∓ ψ‖``, the Husimi asymmetry and the parity if any.
    """
    reflection = reflection or z2_flip()
    image = reflection.apply(psi).coeffs
    even = float(np.linalg.norm(image - psi.coeffs))
    odd = float(np.linalg.norm(image + psi.coeffs))

    grid = np.asarray(fibonacci_sphere(grid_size))
    asymmetry = float(np.max(np.abs(husimi_at(psi, grid) - husimi_at(psi, reflection.point_map(grid)))))

    parity = None
    if even <= PARITY_TOLERANCE:
        parity = 1
    elif odd <= PARITY_TOLERANCE:
        parity = -1
    return Z2Report(even_residual=even, odd_residual=odd, husimi_asymmetry=asymmetry, parity=parity)


def _ssb_job(args: tuple[ModelSpec, int, float, tuple[tuple[float, float, float], ...]]) -> SSBRecord:
    spec, n_sites, cap_radius, minima = args
    model = create_model(spec)
    operator = model.hamiltonian(n_sites)
    pair = ground_state(operator, model.symmetry())
    values = eigh(operator).eigenvalues
    check = z2_check(pair.vector, model.symmetry())
    masses = [husimi_mass(pair.vector, cap_region(SpherePoint.from_cartesian(*m), cap_radius)) for m in minima]
    logger.debug("N=%d: E0=%r, parity %s, cap masses %s", n_sites, pair.value, check.parity, masses)
    return SSBRecord(
        N=n_sites,
        ground_energy=pair.value,
        gap=float(values[1] - values[0]),
        z2_invariant=check.invariant,
        even_residual=check.even_residual,
        odd_residual=check.odd_residual,
        husimi_asymmetry=check.husimi_asymmetry,
        cap_masses=masses,
        cap_total=float(sum(masses)),
    )


def ssb_report(
    spec: ModelSpec,
    n_grid: list[int],
    cap_radius: float = DEFAULT_CAP_RADIUS,
    workers: int | None = 1,
) -> SSBReport:
    """Finite-N ground states against the predicted limit state.

    Symmetry is broken when every finite-N ground state is a pure reflection
    eigenvector while the limit state is a mixture over several minima.

    Args:
        spec: Model with a declared reflection symmetry.
        n_grid: Sizes N.
        cap_radius: Geodesic radius of the caps around each minimum.
        workers: Worker processes.

    Returns:
        Per-N records and the verdict.

    Raises:
        PreconditionError: If the model has no reflection symmetry.
    """
    model = create_model(spec)
    reflection = model.symmetry()
    if reflection is None:
        raise PreconditionError(f"{spec.label()} declares no reflection symmetry")
    h0 = model.principal_symbol
    energy = value_range(h0).lo
    minima = critical_points(h0, energy)
    limit = limit_state_prediction(h0, energy)
    pairwise = [a.point.geodesic_distance(b.point) for i, a in enumerate(minima) for b in minima[i + 1 :]]
    if pairwise and min(pairwise) <= 2 * cap_radius:
        logger.warning(
            "Caps of radius %r around the minima overlap (closest pair %.3g apart)", cap_radius, min(pairwise)
        )

    jobs = [(spec, n, cap_radius, tuple(tuple(c.point.xyz.tolist()) for c in minima)) for n in n_grid]
    records = map_jobs(_ssb_job, jobs, workers)

    all_invariant = all(r.z2_invariant for r in records)
    mixed = not limit.is_pure
    broken = all_invariant and mixed and limit.is_invariant(reflection)
    if not all_invariant:
        verdict = "inconclusive"
    elif broken:
        verdict = "broken"
    else:
        verdict = "unbroken"
    logger.info(
        "SSB for %s: %d minima, limit entropy %.6g, verdict %s", spec.label(), len(minima), limit.entropy, verdict
    )
    return SSBReport(
        model=spec.label(),
        minima=[c.point.xyz.tolist() for c in minima],
        min_value=energy,
        cap_radius=cap_radius,
        records=records,
        limit_support=limit.support_size,
        limit_entropy=limit.entropy,
        broken=broken,
        verdict=verdict,
    )
