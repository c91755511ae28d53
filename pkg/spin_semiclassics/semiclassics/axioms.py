"""Property suite for the quantization map on seeded random symbols."""

from __future__ import annotations

import logging

import numpy as np

from spin_semiclassics.models.schemas import AxiomReport, CheckResult
from spin_semiclassics.polynomials.optimization import sup_norm
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, random_polynomial, reduce_mod_sphere
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.spectral.eigen import eigh, operator_norm

logger = logging.getLogger(__name__)

UNIT_TOLERANCE = 1e-12
ADJOINT_TOLERANCE = 1e-13
NORM_SLACK = 1e-9
POSITIVITY_TOLERANCE = 1e-10
DEFAULT_N_LIST = (8, 32, 128)


def _check(name: str, worst: float, threshold: float, passed: bool, detail: str) -> CheckResult:
    result = CheckResult(name=name, passed=passed, value=worst, threshold=threshold, detail=detail)
    log = logger.info if passed else logger.error
    log("Axiom check %s: worst %.3g against %.3g (%s)", name, worst, threshold, "pass" if passed else "FAIL")
    return result


def axiom_suite(
    seed: int = 0,
    count: int = 50,
    degree: int = 4,
    n_list: list[int] | tuple[int, ...] = DEFAULT_N_LIST,
) -> AxiomReport:
    """Unit, self-adjointness, norm-bound and positivity checks.

    For each N and each of ``count`` random polynomials of the given degree:

    - ``Q(1) = Id`` entrywise within 1e-12;
    - ``Q(p̄) = Q(p)*`` entrywise within 1e-13 relative to the entry scale
      (complex ``p``);
    - ``‖Q(f)‖ ≤ ‖f‖∞ (1 + 1e-9)`` (real ``f``);
    - the smallest eigenvalue of ``Q(f²)`` is at least ``−1e-10``.

    Args:
        seed: Seed of the numpy generator; fixes every draw.
        count: Random polynomials per check.
        degree: Maximal degree of the random polynomials.
        n_list: Sizes N.

    Returns:
        One aggregated check per property.
    """
    rng = np.random.default_rng(seed)
    complex_draws = [random_polynomial(rng, degree, complex_coefficients=True) for _ in range(count)]
    real_draws = [random_polynomial(rng, degree) for _ in range(count)]
    bounds = [sup_norm(f) for f in real_draws]
    squares = [reduce_mod_sphere(f * f) for f in real_draws]

    unit_worst = adjoint_worst = norm_worst = 0.0
    positivity_worst = np.inf
    for n in n_list:
        unit_error = quantize(SpherePolynomial.constant(1.0), n).max_abs_difference(QuantizedOperator.identity(n))
        unit_worst = max(unit_worst, unit_error)
        for p in complex_draws:
            forward = quantize(p, n).adjoint()
            backward = quantize(p.conj(), n)
            adjoint_worst = max(adjoint_worst, forward.max_abs_difference(backward) / max(1.0, forward.scale))
        for f, bound, square in zip(real_draws, bounds, squares):
            norm_worst = max(norm_worst, operator_norm(quantize(f, n)) / bound - 1.0)
            positivity_worst = min(positivity_worst, eigh(quantize(square, n)).lo)
        logger.debug("Axiom suite finished N=%d", n)

    detail = f"seed={seed}, count={count}, degree={degree}, N={list(n_list)}"
    checks = [
        _check("unit", unit_worst, UNIT_TOLERANCE, unit_worst <= UNIT_TOLERANCE, detail),
        _check("self-adjointness", adjoint_worst, ADJOINT_TOLERANCE, adjoint_worst <= ADJOINT_TOLERANCE, detail),
        _check("norm-bound", norm_worst, NORM_SLACK, norm_worst <= NORM_SLACK, detail),
        _check(
            "positivity",
            float(positivity_worst),
            -POSITIVITY_TOLERANCE,
            positivity_worst >= -POSITIVITY_TOLERANCE,
            detail,
        ),
    ]
    return AxiomReport(seed=seed, count=count, degree=degree, n_list=list(n_list), checks=checks)
