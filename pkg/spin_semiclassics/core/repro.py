"""Reproduction of the acceptance criteria with fixed desk-scale parameters.

Each criterion yields one or more ``CheckResult`` rows; the table is written
as ``repro_summary``. Thresholds on decaying quantities are empirical.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Callable

import numpy as np

from spin_semiclassics.core.config import RunConfig
from spin_semiclassics.hamiltonians.collective import compress_to_symmetric, tensor_spin_sum
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.hamiltonians.symbols import symbol_correction_fit
from spin_semiclassics.models.schemas import CheckResult, ModelKind, ModelSpec
from spin_semiclassics.outputs.base import BaseOutput
from spin_semiclassics.polynomials.optimization import value_range
from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.quantization.bargmann import bargmann_transform
from spin_semiclassics.quantization.berezin import full_sphere, husimi_mass, quantize
from spin_semiclassics.quantization.dicke import DickeVector, overlap
from spin_semiclassics.semiclassics.axioms import axiom_suite
from spin_semiclassics.semiclassics.decay import doubling_ratios, geometric_grid, is_monotone_decreasing
from spin_semiclassics.semiclassics.dgr import dgr_calibrate, dgr_defect, product_defect
from spin_semiclassics.semiclassics.forbidden import forbidden_region_study
from spin_semiclassics.semiclassics.limits import StateSelector, convergence_study
from spin_semiclassics.semiclassics.symmetry import ssb_report
from spin_semiclassics.spectral.checks import quasi_eigenvector_defect, spectrum_distance, weyl_check
from spin_semiclassics.spectral.eigen import eigh

logger = logging.getLogger(__name__)

CW_SPEC = ModelSpec(kind=ModelKind.CURIE_WEISS, J=1.0, B=0.5)
LMG_SPEC = ModelSpec(kind=ModelKind.LMG, lam=1.0, gamma=0.5, B=0.0)
OMEGA_PLUS = SpherePoint.from_cartesian(0.5, 0.0, math.sqrt(3) / 2)
OMEGA_MINUS = SpherePoint.from_cartesian(0.5, 0.0, -math.sqrt(3) / 2)


def _result(name: str, value: float, threshold: float, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), value=float(value), threshold=threshold, detail=detail)


def _ratios_at_least(values: list[float], bound: float) -> bool:
    return all(r is None or r >= bound for r in doubling_ratios(values))


def _random_point(rng: np.random.Generator) -> SpherePoint:
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return SpherePoint.from_cartesian(*v)


def criterion_axioms(config: RunConfig) -> list[CheckResult]:
    """Quantization properties on 50 random degree-4 symbols."""
    report = axiom_suite(config.seed, 50, 4, [8, 32, 128])
    return [c.model_copy(update={"name": f"axioms/{c.name}"}) for c in report.checks]


def criterion_exact_identities(config: RunConfig) -> list[CheckResult]:
    """Identities that hold exactly at every N."""
    rng = np.random.default_rng(config.seed)
    sizes = [8, 32, 128]
    z = SpherePolynomial.coordinate("z")

    spectrum_error = 0.0
    for n in sizes:
        expected = np.sort(2.0 * (n / 2 - np.arange(n + 1)) / (n + 2))
        spectrum_error = max(spectrum_error, float(np.max(np.abs(eigh(quantize(z, n)).eigenvalues - expected))))

    overlap_error = 0.0
    n_overlap = 32
    for _ in range(100):
        p, q = _random_point(rng), _random_point(rng)
        t = float(np.clip(np.dot(p.xyz, q.xyz), -1.0, 1.0))
        overlap_error = max(overlap_error, abs(abs(overlap(n_overlap, p, q)) - ((1 + t) / 2) ** (n_overlap / 2)))

    mass_error = bargmann_error = 0.0
    for n in sizes:
        psi = DickeVector.random(rng, n)
        mass_error = max(mass_error, abs(husimi_mass(psi, full_sphere) - 1.0))
        bargmann_error = max(bargmann_error, abs(bargmann_transform(psi).norm() - 1.0))

    return [
        _result("exact/spectrum-Q(z)", spectrum_error, 1e-12, spectrum_error <= 1e-12),
        _result("exact/coherent-overlap", overlap_error, 1e-12, overlap_error <= 1e-12),
        _result("exact/husimi-mass", mass_error, 1e-10, mass_error <= 1e-10),
        _result("exact/bargmann-isometry", bargmann_error, 1e-8, bargmann_error <= 1e-8),
    ]


def criterion_tensor_oracle(config: RunConfig) -> list[CheckResult]:
    """Hamiltonians against the compressed 2^N tensor construction."""
    lmg = ModelSpec(kind=ModelKind.LMG, lam=1.0, gamma=0.5, B=0.3)
    worst = 0.0
    for n in range(1, 11):
        sx, sy, sz = (tensor_spin_sum(n, a) for a in "xyz")
        cw_tensor = (-(CW_SPEC.J / (2 * n)) * (sz @ sz) - CW_SPEC.B * sx) / (n + 2)
        lmg_tensor = -lmg.lam / (4 * n * (n + 2)) * (sx @ sx + lmg.gamma * (sy @ sy)) - lmg.B / (2 * (n + 2)) * sz
        for spec, tensor in ((CW_SPEC, cw_tensor), (lmg, lmg_tensor)):
            dense = create_model(spec).hamiltonian(n).to_dense()
            worst = max(worst, float(np.max(np.abs(dense - compress_to_symmetric(tensor, n)))))
    return [_result("oracle/tensor-compression", worst, 1e-12, worst <= 1e-12, "CW and LMG, N=1..10")]


def criterion_spectrum(config: RunConfig) -> list[CheckResult]:
    """Spectral convergence for CW(J=1, B=1/2)."""
    grid = geometric_grid(64, 4096)
    model = create_model(CW_SPEC)
    symbol = model.symbol()
    interval = value_range(symbol.h0)
    distances = [spectrum_distance(interval, eigh(model.hamiltonian(n))) for n in grid]
    weyl = [weyl_check(symbol, n, strict=False) for n in grid]
    return [
        _result(
            "spectrum/distance",
            distances[-1],
            0.01,
            is_monotone_decreasing(distances) and distances[-1] <= 0.01,
            f"distances {distances}",
        ),
        _result("spectrum/weyl", max(w.max_gap - w.bound for w in weyl), 0.0, all(w.passed for w in weyl)),
    ]


def criterion_quasi_eigenvector(config: RunConfig) -> list[CheckResult]:
    """Coherent states at critical points are approximate eigenvectors."""
    grid = geometric_grid(64, 1024)
    h0 = create_model(CW_SPEC).principal_symbol
    energy = -5.0 / 8.0
    defects = [max(quasi_eigenvector_defect(h0, energy, p, n) for p in (OMEGA_PLUS, OMEGA_MINUS)) for n in grid]
    z = SpherePolynomial.coordinate("z")
    exact_error = max(
        abs(quasi_eigenvector_defect(z, 1.0, SpherePoint.north_pole(), n) - 2.0 / (n + 2)) for n in grid
    )
    return [
        _result(
            "quasi-eigenvector/decay",
            min((r for r in doubling_ratios(defects) if r is not None), default=0.0),
            1.4,
            _ratios_at_least(defects, 1.4),
            f"defects {defects}",
        ),
        _result("quasi-eigenvector/exact-z", exact_error, 1e-12, exact_error <= 1e-12),
    ]


def criterion_classical_limit(config: RunConfig) -> list[CheckResult]:
    """Ground-state expectations converge to the two-point mixture."""
    grid = geometric_grid(64, 1024)
    cw = {r.f: r for r in convergence_study(CW_SPEC, StateSelector(index=0), ["z", "x", "z^2"], grid, config.workers)}
    lmg = convergence_study(LMG_SPEC, StateSelector(index=0), ["x^2"], grid, config.workers)[0]
    z_worst = max(abs(v) for v in cw["z"].values)
    x_report, z2_report = cw["x"], cw["z^2"]
    return [
        _result("limit/cw-z-vanishes", z_worst, 1e-10, z_worst <= 1e-10),
        _result(
            "limit/cw-x",
            x_report.residuals[-1],
            0.02,
            x_report.verdict == "converging" and x_report.residuals[-1] <= 0.02,
        ),
        _result(
            "limit/cw-z2",
            z2_report.residuals[-1],
            0.02,
            z2_report.verdict == "converging" and z2_report.residuals[-1] <= 0.02,
        ),
        _result("limit/lmg-x2", lmg.residuals[-1], 0.05, lmg.residuals[-1] <= 0.05),
    ]


def criterion_ssb(config: RunConfig) -> list[CheckResult]:
    """Invariant pure ground state with a bimodal Husimi density at N = 512."""
    report = ssb_report(CW_SPEC, [512], cap_radius=config.cap_radius, workers=1)
    record = report.records[0]
    caps_ok = all(0.4 <= m <= 0.6 for m in record.cap_masses) and record.cap_total >= 0.95
    return [
        _result(
            "ssb/invariance",
            record.husimi_asymmetry,
            1e-8,
            record.z2_invariant and record.husimi_asymmetry <= 1e-8,
        ),
        _result("ssb/cap-masses", record.cap_total, 0.95, caps_ok, f"cap masses {record.cap_masses}"),
        _result(
            "ssb/limit-entropy",
            report.limit_entropy,
            math.log(2),
            report.limit_support == 2 and abs(report.limit_entropy - math.log(2)) <= 1e-12,
        ),
    ]


def criterion_dgr(config: RunConfig) -> list[CheckResult]:
    """Calibrated commutator defect and the product defect."""
    convention = dgr_calibrate(32)
    grid = [64, 128, 256, 512]
    x, y, z = (SpherePolynomial.coordinate(a) for a in "xyz")
    defects = [dgr_defect(x, y, n, convention) for n in grid]
    exact = convention.calibration is not None and convention.calibration.verdict == "exact"
    rates_ok = exact or all(r is not None and 1.5 <= r <= 2.5 for r in doubling_ratios(defects))
    product = product_defect(z, z, 512)
    return [
        _result(
            "dgr/commutator",
            defects[2],
            0.05,
            defects[2] <= 0.05 and rates_ok,
            f"{convention.describe()}, defects {defects}",
        ),
        _result("dgr/product", product, 0.02, product <= 0.02),
    ]


def criterion_forbidden(config: RunConfig) -> list[CheckResult]:
    """Ground-state Husimi mass away from the minimal level decays."""
    grid = geometric_grid(64, 1024)
    records, _ = forbidden_region_study(CW_SPEC, grid, margin=config.margin, workers=config.workers)
    masses = [r.mass for r in records]
    return [
        _result(
            "forbidden/decay",
            masses[-1],
            0.05,
            _ratios_at_least(masses, 1.5) and masses[-1] <= 0.05,
            f"masses {masses}",
        ),
    ]


def criterion_symbol_fit(config: RunConfig) -> list[CheckResult]:
    """Fitted first correction and its comparison with the claimed one."""
    report = symbol_correction_fit(CW_SPEC, [16, 32, 64, 128]).report
    bounded = max(report.scaled_residuals) <= 1.0
    return [
        _result(
            "symbol-fit/scaled-residual", max(report.scaled_residuals), 1.0, bounded, f"fitted h1 = {report.fitted_h1}"
        ),
        _result(
            "symbol-fit/claim-verdict",
            report.max_claim_deviation or 0.0,
            1e-6,
            report.agreement in ("agree", "disagree"),
            f"claimed {report.claimed_h1}: {report.agreement}",
        ),
    ]


CRITERIA: tuple[tuple[str, Callable[[RunConfig], list[CheckResult]]], ...] = (
    ("axioms", criterion_axioms),
    ("exact identities", criterion_exact_identities),
    ("tensor oracle", criterion_tensor_oracle),
    ("spectrum", criterion_spectrum),
    ("quasi-eigenvector", criterion_quasi_eigenvector),
    ("classical limit", criterion_classical_limit),
    ("ssb", criterion_ssb),
    ("dgr", criterion_dgr),
    ("forbidden region", criterion_forbidden),
    ("symbol fit", criterion_symbol_fit),
)


def run_acceptance(config: RunConfig, output: BaseOutput) -> list[CheckResult]:
    """Run every criterion and write the ``repro_summary`` table.

    Args:
        config: Run configuration (seed, workers, cap radius and margin are used).
        output: Destination of the summary table.

    Returns:
        All check results in criterion order.
    """
    results: list[CheckResult] = []
    rows = []
    for number, (title, criterion) in enumerate(CRITERIA, start=1):
        started = time.perf_counter()
        logger.info("Criterion %d: %s", number, title)
        checks = criterion(config)
        elapsed = time.perf_counter() - started
        logger.info("Criterion %d finished in %.1f s", number, elapsed)
        for check in checks:
            rows.append({"criterion": number, **check.model_dump(mode="json")})
        results.extend(checks)
    output.send(rows, "repro_summary")
    return results
