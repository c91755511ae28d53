"""Classical symbols of models and the empirical first-correction fit."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from spin_semiclassics.hamiltonians.base import SymbolExpansion
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.models.schemas import ModelSpec, SymbolFitReport
from spin_semiclassics.polynomials.optimization import sup_norm
from spin_semiclassics.polynomials.sphere_polynomial import (
    SpherePolynomial,
    canonical_monomials,
    reduce_mod_sphere,
)
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.spectral.eigen import operator_norm
from spin_semiclassics.utils.exceptions import PreconditionError, SymbolFitError

logger = logging.getLogger(__name__)

FIT_DEGREE = 2
AGREEMENT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class SymbolFit:
    """A fitted expansion together with its diagnostics.

    Attributes:
        expansion: ``h0`` plus the fitted ``h1``, tagged ``fitted``.
        report: Residuals and the comparison with the claimed correction.
    """

    expansion: SymbolExpansion
    report: SymbolFitReport


def model_symbol(spec: ModelSpec) -> SymbolExpansion:
    """Principal symbol with the literature's claimed first correction.

    ``h0`` is always the model's own principal symbol; built-in models attach
    their claimed corrections and the tag ``claimed``. Custom models return the
    user symbol. Use :func:`symbol_correction_fit` to measure the true
    correction and the deviation of the claimed ``h0``.
    """
    model = create_model(spec)
    claimed = model.claimed_symbol()
    if claimed is None:
        return model.symbol()
    return SymbolExpansion(model.principal_symbol, claimed.corrections, tag="claimed")


def _band_vector(operator: QuantizedOperator, halfband: int) -> np.ndarray:
    bands = operator.with_halfband(halfband).diagonals.ravel()
    return np.concatenate([bands.real, bands.imag])


def symbol_correction_fit(spec: ModelSpec, n_list: list[int]) -> SymbolFit:
    """Fit ``h1`` in ``H_N ≈ Q(h0) + N^{−1} Q(h1)`` over canonical monomials of degree ≤ 2.

    The stacked least-squares system uses every band entry (real and imaginary
    parts) of ``N·(H_N − Q(h0))`` for each N in ascending order.

    Args:
        spec: Model to fit.
        n_list: At least three sizes, each at least 2.

    Returns:
        The fitted expansion and its report.

    Raises:
        PreconditionError: If fewer than three sizes are given.
        SymbolFitError: If the design matrix is rank deficient.
    """
    sizes = sorted(set(n_list))
    if len(sizes) < 3:
        raise PreconditionError(f"symbol_correction_fit needs at least 3 distinct N, got {n_list}")
    if sizes[0] < FIT_DEGREE:
        raise PreconditionError(f"Every N must be at least {FIT_DEGREE}, got {sizes[0]}")

    model = create_model(spec)
    h0 = reduce_mod_sphere(model.principal_symbol)
    basis = canonical_monomials(FIT_DEGREE)
    hamiltonians = {n: model.hamiltonian(n) for n in sizes}

    rows: list[np.ndarray] = []
    targets: list[np.ndarray] = []
    for n in sizes:
        halfband = max(FIT_DEGREE, hamiltonians[n].halfband, h0.degree)
        halfband = min(halfband, n)
        remainder = (hamiltonians[n] - quantize(h0, n)) * float(n)
        targets.append(_band_vector(remainder, halfband))
        columns = [_band_vector(quantize(SpherePolynomial({m: 1.0}), n), halfband) for m in basis]
        rows.append(np.column_stack(columns))
    design = np.vstack(rows)
    rhs = np.concatenate(targets)

    coefficients, _, rank, _ = np.linalg.lstsq(design, rhs, rcond=None)
    if rank < len(basis):
        raise SymbolFitError(f"Correction fit is rank deficient (rank {rank} < {len(basis)}) for N={sizes}")
    h1 = SpherePolynomial(dict(zip(basis, coefficients)))
    expansion = SymbolExpansion(model.principal_symbol, ((1, h1),), tag="fitted")

    residuals = [operator_norm(hamiltonians[n] - expansion.quantize(n)) for n in sizes]
    unfitted = [operator_norm(hamiltonians[n] - quantize(h0, n)) for n in sizes]

    claimed = model.claimed_symbol()
    claimed_text = claimed_residuals = deviation = None
    agreement = "no-claim"
    if claimed is not None:
        claimed_h1 = claimed.correction(1)
        claimed_text = claimed_h1.to_text()
        claimed_residuals = [operator_norm(hamiltonians[n] - claimed.quantize(n)) for n in sizes]
        deviation = max(
            sup_norm(reduce_mod_sphere(claimed_h1 - h1)),
            sup_norm(reduce_mod_sphere(claimed.h0 - model.principal_symbol)),
        )
        agreement = "agree" if deviation <= AGREEMENT_TOLERANCE else "disagree"
        logger.info("Claimed correction %s vs fitted %s: %s (deviation %.3g)", claimed_text, h1, agreement, deviation)

    report = SymbolFitReport(
        model=spec.label(),
        n_grid=sizes,
        basis=[SpherePolynomial({m: 1.0}).to_text() for m in basis],
        coefficients=[float(c) for c in coefficients],
        fitted_h1=h1.to_text(),
        residuals=residuals,
        scaled_residuals=[n * n * r for n, r in zip(sizes, residuals)],
        unfitted_residuals=unfitted,
        claimed_h1=claimed_text,
        claimed_residuals=claimed_residuals,
        agreement=agreement,
        max_claim_deviation=deviation,
    )
    return SymbolFit(expansion, report)
