"""Core engine that dispatches subcommands and routes their results to outputs."""

from __future__ import annotations

import logging
import re
from collections.abc import Callable
from typing import Any

from spin_semiclassics.core.cache import ResultCache
from spin_semiclassics.core.config import RunConfig
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.hamiltonians.symbols import symbol_correction_fit
from spin_semiclassics.models.schemas import CheckResult, SpectrumDistanceRecord
from spin_semiclassics.outputs.base import BaseOutput
from spin_semiclassics.outputs.file import FileOutput
from spin_semiclassics.outputs.stdout import StdoutOutput
from spin_semiclassics.polynomials.optimization import critical_points, value_range
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, reduce_mod_sphere
from spin_semiclassics.quantization.berezin import cap_region, full_sphere, husimi_grid, husimi_mass, quantize
from spin_semiclassics.quantization.operators import write_operator
from spin_semiclassics.semiclassics.axioms import axiom_suite
from spin_semiclassics.semiclassics.decay import decay_report
from spin_semiclassics.semiclassics.dgr import dgr_calibrate, dgr_curve, norm_convergence, product_curve
from spin_semiclassics.semiclassics.forbidden import forbidden_region_mass
from spin_semiclassics.semiclassics.limits import convergence_study, target_energy
from spin_semiclassics.semiclassics.symmetry import ssb_report
from spin_semiclassics.spectral.checks import containment_excess, spectrum_distance, weyl_check
from spin_semiclassics.utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

HUSIMI_MASS_TOLERANCE = 1e-10

Handler = Callable[[RunConfig, BaseOutput, ResultCache], list[CheckResult]]


def create_output(config: RunConfig) -> BaseOutput:
    """Create the output adapter selected by the configuration."""
    if config.output == "stdout":
        return StdoutOutput()
    return FileOutput(config.out, file_format=config.format)


def slug(text: str) -> str:
    """File-name-safe form of a polynomial text."""
    cleaned = re.sub(r"[^0-9A-Za-z.]+", "_", text.replace("^", "")).strip("_")
    return cleaned or "const"


def _dump(items: list[Any]) -> list[dict[str, Any]]:
    return [item.model_dump(mode="json") for item in items]


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def run_axioms(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Property suite of the quantization map."""
    report = axiom_suite(config.seed, config.count, config.degree, config.N)
    output.send(_dump(report.checks), "axioms")
    return report.checks


def run_quantize(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Emit ``Q(f)`` for every observable and size."""
    rows = []
    for text in config.f:
        p = reduce_mod_sphere(SpherePolynomial.parse(text))
        for n in config.N:
            operator = quantize(p, n)
            row: dict[str, Any] = {"f": text, "N": n, "halfband": operator.halfband}
            if isinstance(output, FileOutput):
                suffix = "bin" if config.binary else "txt"
                target = config.out / "operators" / f"{slug(text)}_N{n}.{suffix}"
                path = write_operator(operator, target, binary=config.binary)
                row["path"] = str(path)
            else:
                row["operator"] = operator.to_text()
            rows.append(row)
    output.send(rows, "quantize")
    return []


def run_spectrum(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Distance from the symbol range to the spectrum, with the Weyl check."""
    spec = config.spec()
    symbol = create_model(spec).symbol()
    interval = value_range(symbol.h0)
    records, weyl, eigenvalues = [], [], []
    for n in config.N:
        spectrum = cache.spectrum(spec, n)
        records.append(
            SpectrumDistanceRecord(
                N=n,
                distance=spectrum_distance(interval, spectrum),
                range_lo=interval.lo,
                range_hi=interval.hi,
                spectrum_lo=spectrum.lo,
                spectrum_hi=spectrum.hi,
                containment_excess=containment_excess(interval, spectrum),
            )
        )
        weyl.append(weyl_check(symbol, n, strict=True))
        eigenvalues.extend(spectrum.records())
        logger.info("N=%d: dist(ran h0, spectrum) = %.6g", n, records[-1].distance)

    distances = [r.distance for r in records]
    trend = decay_report(config.N, distances)
    logger.info(
        "Spectrum distance for %s: final %.6g (tol %r), %s", spec.label(), distances[-1], config.tol, trend.verdict
    )
    output.send(_dump(records), "spectrum")
    output.send(_dump(weyl), "weyl")
    output.send(eigenvalues, "eigenvalues")
    output.send_curve("spectrum_distance", config.N, distances)
    logger.info("Cache: %s", cache.stats())
    return [
        CheckResult(
            name="weyl",
            passed=all(w.passed for w in weyl),
            value=max(w.max_gap - w.bound for w in weyl),
            threshold=0.0,
            detail="max over N of (eigenvalue shift - bound)",
        )
    ]


def run_limit(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Classical-limit convergence study."""
    reports = convergence_study(config.spec(), config.selector(), config.f, config.N, config.workers)
    output.send([row for r in reports for row in _dump(r.records())], "limit")
    output.send_reports(_dump(reports), "limit_reports")
    for report in reports:
        output.send_curve(f"limit_{slug(report.f)}", report.n_grid, report.residuals)
    return []


def run_dgr(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Convention calibration plus commutator, product and norm defect curves."""
    if len(config.f) != len(config.g):
        raise ConfigurationError(f"dgr pairs f with g elementwise; got {len(config.f)} f and {len(config.g)} g")
    convention = dgr_calibrate(config.n_small)
    calibration = convention.calibration
    output.send_reports([calibration.model_dump(mode="json")], "dgr_calibration")

    dgr_rows, product_rows, norm_rows = [], [], []
    for f_text, g_text in zip(config.f, config.g):
        f, g = SpherePolynomial.parse(f_text), SpherePolynomial.parse(g_text)
        curve = dgr_curve(f, g, config.N, convention)
        dgr_rows.extend(_dump(curve))
        trend = decay_report(config.N, [r.defect for r in curve])
        logger.info("DGR defect of (%s, %s): ratios %s, %s", f_text, g_text, trend.ratios, trend.verdict)
        output.send_curve(f"dgr_{slug(f_text)}_{slug(g_text)}", config.N, trend.values)

        products = product_curve(f, g, config.N)
        product_rows.extend(
            {"N": n, "f": f_text, "g": g_text, "defect": d} for n, d in zip(products.n_grid, products.values)
        )
        output.send_curve(f"product_{slug(f_text)}_{slug(g_text)}", products.n_grid, products.values)
    for f_text in config.f:
        norm_rows.extend(_dump(norm_convergence(SpherePolynomial.parse(f_text), config.N)))

    output.send(dgr_rows, "dgr")
    output.send(product_rows, "product")
    output.send(norm_rows, "norm")
    return [
        CheckResult(
            name="dgr-calibration",
            passed=True,
            value=calibration.grid.values[-1],
            threshold=None,
            detail=f"hbar={calibration.hbar}, sign={calibration.sign:+d}, {calibration.verdict}",
        )
    ]


def run_husimi(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Husimi density grids and region masses of tracked eigenvectors."""
    spec = config.spec()
    model = create_model(spec)
    selector = config.selector()
    h0 = model.principal_symbol
    energy = target_energy(h0, selector)
    centers = [c.point for c in critical_points(h0, energy)]

    rows = []
    worst_total = 0.0
    for n in config.N:
        pair = selector.select(model, n)
        total = husimi_mass(pair.vector, full_sphere)
        worst_total = max(worst_total, abs(total - 1.0))
        caps = [husimi_mass(pair.vector, cap_region(c, config.cap_radius)) for c in centers]
        rows.append(
            {
                "N": n,
                "energy": pair.value,
                "target_energy": energy,
                "total_mass": total,
                "forbidden_mass": forbidden_region_mass(pair.vector, h0, energy, config.margin),
                "cap_masses": caps,
                "cap_total": float(sum(caps)),
            }
        )
        theta, phi, density = husimi_grid(pair.vector)
        grid_rows = [
            {"theta": float(t), "phi": float(p), "density": float(density[i, j])}
            for i, t in enumerate(theta)
            for j, p in enumerate(phi)
        ]
        output.send(grid_rows, f"husimi_grid_N{n}")
    output.send(rows, "husimi")
    output.send_curve("forbidden_mass", config.N, [r["forbidden_mass"] for r in rows])
    return [
        CheckResult(
            name="husimi-normalization",
            passed=worst_total <= HUSIMI_MASS_TOLERANCE,
            value=worst_total,
            threshold=HUSIMI_MASS_TOLERANCE,
            detail="max over N of |total mass - 1|",
        )
    ]


def run_ssb(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Spontaneous symmetry breaking report."""
    report = ssb_report(config.spec(), config.N, config.cap_radius, config.workers)
    output.send(_dump(report.records), "ssb")
    output.send_reports([report.model_dump(mode="json")], "ssb_report")
    return [
        CheckResult(
            name="ground-state-invariance",
            passed=all(r.z2_invariant for r in report.records),
            value=max(min(r.even_residual, r.odd_residual) for r in report.records),
            threshold=None,
            detail=f"verdict {report.verdict}",
        )
    ]


def run_fit_symbol(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """First-correction fit against the claimed symbol."""
    fit = symbol_correction_fit(config.spec(), config.N)
    report = fit.report
    output.send_reports([report.model_dump(mode="json")], "symbol_fit")
    rows = [
        {"N": n, "residual": r, "scaled_residual": s, "unfitted_residual": u}
        for n, r, s, u in zip(report.n_grid, report.residuals, report.scaled_residuals, report.unfitted_residuals)
    ]
    output.send(rows, "symbol_fit")
    logger.info("Fitted h1 = %s; claimed %s: %s", report.fitted_h1, report.claimed_h1, report.agreement)
    return []


def run_repro(config: RunConfig, output: BaseOutput, cache: ResultCache) -> list[CheckResult]:
    """Full acceptance suite."""
    from spin_semiclassics.core.repro import run_acceptance

    return run_acceptance(config, output)


# Registry: subcommand → handler
SUBCOMMAND_REGISTRY: dict[str, Handler] = {
    "axioms": run_axioms,
    "quantize": run_quantize,
    "spectrum": run_spectrum,
    "limit": run_limit,
    "dgr": run_dgr,
    "husimi": run_husimi,
    "ssb": run_ssb,
    "fit-symbol": run_fit_symbol,
    "repro": run_repro,
}


def run(config: RunConfig) -> dict[str, Any]:
    """Run one subcommand.

    Args:
        config: Validated run configuration.

    Returns:
        Summary dict with the hard checks, the failed check names and the
        files written.

    Raises:
        ConfigurationError: If the subcommand is not registered.
    """
    handler = SUBCOMMAND_REGISTRY.get(config.subcommand)
    if handler is None:
        supported = ", ".join(sorted(SUBCOMMAND_REGISTRY))
        raise ConfigurationError(f"Unknown subcommand '{config.subcommand}'. Supported: {supported}")

    output = create_output(config)
    cache = ResultCache(config.resolved_cache_dir(), enabled=config.cache)
    logger.info("--- Running %s ---", config.subcommand)
    try:
        checks = handler(config, output, cache)
    finally:
        output.close()

    failed = [c.name for c in checks if not c.passed]
    for check in checks:
        if check.passed:
            logger.info("  pass %s: %s (threshold %s)", check.name, check.value, check.threshold)
        else:
            logger.error("  FAIL %s: %s (threshold %s) %s", check.name, check.value, check.threshold, check.detail)
    artifacts = [str(p) for p in getattr(output, "written", [])]
    logger.info("=== %s complete: %d checks, %d failed ===", config.subcommand, len(checks), len(failed))
    return {"subcommand": config.subcommand, "checks": _dump(checks), "failed": failed, "artifacts": artifacts}
