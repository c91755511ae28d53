"""Commutator, product and norm defects of the quantization map.

The Dirac–Groenewold–Rieffel defect compares the rescaled commutator
``s·(i/ħ)[Q(f), Q(g)]`` with ``Q({f, g})``. The effective ħ and the bracket
orientation ``s`` are calibrated once on the pair ``(x, y)`` instead of being
assumed.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from spin_semiclassics.models.schemas import DGRCalibration, DGRRecord, DecayReport, NormRecord
from spin_semiclassics.polynomials.optimization import sup_norm
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, poisson_bracket, reduce_mod_sphere
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.semiclassics.decay import decay_report
from spin_semiclassics.spectral.eigen import operator_norm
from spin_semiclassics.utils.exceptions import InvariantViolationError, PolynomialError

logger = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-10
CALIBRATION_GRID = (32, 64, 128, 256)

HBAR_RULES: dict[str, Callable[[int], float]] = {
    "1/N": lambda n: 1.0 / n,
    "2/N": lambda n: 2.0 / n,
    "2/(N+2)": lambda n: 2.0 / (n + 2),
}


@dataclass(frozen=True)
class DGRConvention:
    """Effective Planck constant and bracket orientation.

    Attributes:
        hbar: One of the keys of ``HBAR_RULES``.
        sign: +1 or −1.
        calibration: Report of the calibration run that chose this convention.
    """

    hbar: str
    sign: int
    calibration: DGRCalibration | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        """Validate the labels."""
        if self.hbar not in HBAR_RULES:
            raise ValueError(f"Unknown hbar rule '{self.hbar}', expected one of {sorted(HBAR_RULES)}")
        if self.sign not in (1, -1):
            raise ValueError(f"Bracket sign must be +1 or -1, got {self.sign}")

    def hbar_at(self, n_sites: int) -> float:
        """Numerical ħ at size N."""
        return HBAR_RULES[self.hbar](n_sites)

    def describe(self) -> str:
        """Label used in logs."""
        return f"hbar={self.hbar}, sign={self.sign:+d}"


CANDIDATES: tuple[DGRConvention, ...] = tuple(DGRConvention(h, s) for h in HBAR_RULES for s in (1, -1))


def _real_canonical(p: SpherePolynomial, what: str) -> SpherePolynomial:
    if not p.is_real:
        raise PolynomialError(f"{what} must be real, got '{p.to_text()}'")
    return reduce_mod_sphere(p)


def dgr_defect(f: SpherePolynomial, g: SpherePolynomial, n_sites: int, convention: DGRConvention) -> float:
    """``‖s·(i/ħ)[Q(f), Q(g)] − Q({f, g})‖``.

    Args:
        f: Real polynomial.
        g: Real polynomial.
        n_sites: Number of spins N.
        convention: ħ rule and sign.

    Returns:
        Operator-norm defect.
    """
    f, g = _real_canonical(f, "f"), _real_canonical(g, "g")
    qf, qg = quantize(f, n_sites), quantize(g, n_sites)
    scaled = qf.commutator(qg) * (1j * convention.sign / convention.hbar_at(n_sites))
    bracket = poisson_bracket(f, g)
    defect = scaled - quantize(bracket, n_sites)
    return operator_norm(defect.hermitized())


def product_defect(f: SpherePolynomial, g: SpherePolynomial, n_sites: int) -> float:
    """``‖Q(f)Q(g) − Q(fg)‖`` with ``fg`` reduced before quantizing."""
    f, g = _real_canonical(f, "f"), _real_canonical(g, "g")
    product = reduce_mod_sphere(f * g)
    defect = quantize(f, n_sites) @ quantize(g, n_sites) - quantize(product, n_sites)
    return operator_norm(defect)


def dgr_curve(
    f: SpherePolynomial,
    g: SpherePolynomial,
    n_grid: list[int],
    convention: DGRConvention,
) -> list[DGRRecord]:
    """Defect of one pair along an N-grid."""
    return [
        DGRRecord(
            N=n,
            f=f.to_text(),
            g=g.to_text(),
            hbar=convention.hbar,
            sign=convention.sign,
            defect=dgr_defect(f, g, n, convention),
        )
        for n in n_grid
    ]


def dgr_calibrate(n_small: int = 32, n_grid: tuple[int, ...] = CALIBRATION_GRID) -> DGRConvention:
    """Choose the convention minimizing the ``(x, y)`` defect at ``n_small``.

    The choice is then confirmed on ``n_grid``: the defect must either vanish
    identically (verdict ``exact``) or converge.

    Returns:
        The convention, with the calibration report attached.

    Raises:
        InvariantViolationError: If the chosen convention does not drive the defect to zero.
    """
    x, y = SpherePolynomial.coordinate("x"), SpherePolynomial.coordinate("y")
    candidates = [
        DGRRecord(N=n_small, f="x", g="y", hbar=c.hbar, sign=c.sign, defect=dgr_defect(x, y, n_small, c))
        for c in CANDIDATES
    ]
    for record in candidates:
        logger.debug(
            "DGR candidate hbar=%s sign=%+d: defect %.6g at N=%d", record.hbar, record.sign, record.defect, n_small
        )
    best = min(range(len(CANDIDATES)), key=lambda i: candidates[i].defect)
    chosen = CANDIDATES[best]

    defects = [dgr_defect(x, y, n, chosen) for n in n_grid]
    grid = decay_report(list(n_grid), defects)
    if all(d <= EXACT_TOLERANCE for d in defects):
        verdict = "exact"
    elif grid.verdict == "converging":
        verdict = "converging"
    else:
        raise InvariantViolationError(
            f"No DGR convention drives the (x, y) defect to zero; best was {chosen.describe()} with {defects}"
        )
    logger.info("Calibrated DGR convention %s (%s)", chosen.describe(), verdict)
    report = DGRCalibration(
        n_small=n_small,
        candidates=candidates,
        hbar=chosen.hbar,
        sign=chosen.sign,
        grid=grid,
        verdict=verdict,
    )
    return DGRConvention(chosen.hbar, chosen.sign, calibration=report)


def product_curve(f: SpherePolynomial, g: SpherePolynomial, n_grid: list[int]) -> DecayReport:
    """Product defect along an N-grid."""
    return decay_report(n_grid, [product_defect(f, g, n) for n in n_grid])


def norm_convergence(f: SpherePolynomial, n_grid: list[int]) -> list[NormRecord]:
    """``‖Q(f)‖`` against ``‖f‖∞`` along an N-grid.

    The deficit ``‖f‖∞ − ‖Q(f)‖`` is nonnegative and tends to zero.
    """
    reduced = _real_canonical(f, "f")
    bound = sup_norm(reduced)
    records = []
    for n in n_grid:
        norm = operator_norm(quantize(reduced, n))
        records.append(NormRecord(N=n, f=reduced.to_text(), operator_norm=norm, sup_norm=bound, deficit=bound - norm))
    return records
