"""Classical limits of eigenvector sequences.

For a principal symbol with finitely many nondegenerate critical points on
the level ``h0 = E``, eigenvectors with eigenvalues tending to E converge (as
states on the quantized observables) to the uniform mixture of point masses
at those critical points.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from spin_semiclassics.core.parallel import map_jobs
from spin_semiclassics.hamiltonians.base import SpinModel
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.models.schemas import ConvergenceReport, ModelSpec
from spin_semiclassics.polynomials.optimization import critical_points, value_range
from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, evaluate, reduce_mod_sphere
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.reflections import Reflection
from spin_semiclassics.semiclassics.decay import decay_exponent, decay_verdict
from spin_semiclassics.spectral.eigen import EigenPair, eigenpair, ground_state
from spin_semiclassics.utils.exceptions import LimitStateError, PolynomialError, PreconditionError

logger = logging.getLogger(__name__)

MATCH_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ClassicalLimitState:
    """Finite convex combination of point evaluations on S².

    Attributes:
        points: Support points.
        weights: Positive weights summing to 1.
    """

    points: tuple[SpherePoint, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        """Validate the weights."""
        if len(self.points) != len(self.weights) or not self.points:
            raise PreconditionError("A limit state needs matching, nonempty points and weights")
        if any(w <= 0 for w in self.weights):
            raise PreconditionError(f"Weights must be positive, got {self.weights}")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise PreconditionError(f"Weights must sum to 1, got {sum(self.weights)!r}")

    @classmethod
    def uniform(cls, points: list[SpherePoint]) -> ClassicalLimitState:
        """Equal weights ``1/n``."""
        return cls(tuple(points), tuple(1.0 / len(points) for _ in points))

    @property
    def support_size(self) -> int:
        """Number of support points."""
        return len(self.points)

    @property
    def entropy(self) -> float:
        """``−Σ w log w``; zero exactly for pure (one-point) states."""
        return float(-sum(w * math.log(w) for w in self.weights))

    @property
    def is_pure(self) -> bool:
        """Whether the state is a single point evaluation."""
        return self.support_size == 1

    def expectation(self, f: SpherePolynomial) -> float:
        """``ω0(f) = Σ w_i f(Ω_i)``."""
        return float(sum(w * evaluate(f, p).real for p, w in zip(self.points, self.weights)))

    def mapped(self, reflection: Reflection) -> ClassicalLimitState:
        """Push-forward under a reflection."""
        return ClassicalLimitState(tuple(reflection.map_point(p) for p in self.points), self.weights)

    def is_invariant(self, reflection: Reflection, tol: float = MATCH_TOLERANCE) -> bool:
        """Whether the reflection permutes the support and preserves the weights."""
        image = self.mapped(reflection)
        for p, w in zip(image.points, image.weights):
            matches = [
                w2 for q, w2 in zip(self.points, self.weights) if p.geodesic_distance(q) <= tol
            ]
            if not matches or abs(matches[0] - w) > tol:
                return False
        return True


@dataclass(frozen=True)
class StateSelector:
    """How to pick one eigenvector per N.

    Attributes:
        index: Position in the ascending spectrum (0 is the ground state).
        energy: Target energy; the nearest eigenvalue is taken.
    """

    index: int | None = 0
    energy: float | None = None

    def __post_init__(self) -> None:
        """Require exactly one rule."""
        if (self.index is None) == (self.energy is None):
            raise PreconditionError("Select eigenvectors by exactly one of index or energy")

    def describe(self) -> str:
        """Label used in reports."""
        return f"index={self.index}" if self.index is not None else f"energy={self.energy!r}"

    def select(self, model: SpinModel, n_sites: int) -> EigenPair:
        """Eigenpair of ``H_N`` chosen by this rule.

        Ground states use the model's symmetry sectors so that tunnel-split
        doublets do not produce a degenerate solve.
        """
        operator = model.hamiltonian(n_sites)
        if self.index == 0:
            return ground_state(operator, model.symmetry())
        if self.index is not None:
            return eigenpair(operator, index=self.index)
        return eigenpair(operator, energy=self.energy)


def classical_expectation(psi: DickeVector, f: SpherePolynomial) -> float:
    """``⟨ψ, Q(f) ψ⟩`` for a real observable.

    Raises:
        PolynomialError: If ``f`` is not real.
    """
    if not f.is_real:
        raise PolynomialError(f"Observables must be real, got '{f.to_text()}'")
    return quantize(reduce_mod_sphere(f), psi.n_sites).expectation(psi).real


def limit_state_prediction(h0: SpherePolynomial, energy: float) -> ClassicalLimitState:
    """Uniform mixture over the critical points of ``h0`` on the level ``energy``.

    Raises:
        LimitStateError: If the level holds no critical point or a degenerate one.
    """
    found = critical_points(h0, energy)
    if not found:
        raise LimitStateError(f"No critical point of {h0} at level {energy!r}; the energy is regular")
    degenerate = [c for c in found if not c.nondegenerate]
    if degenerate:
        raise LimitStateError(
            f"Degenerate critical points of {h0} at level {energy!r}: {[c.point for c in degenerate]}"
        )
    logger.debug("Limit state at level %r supported on %d points", energy, len(found))
    return ClassicalLimitState.uniform([c.point for c in found])


def target_energy(h0: SpherePolynomial, selector: StateSelector) -> float:
    """Classical energy the selected eigenvalues approach.

    Fixed spectral positions sink to ``min h0``; energy selectors use their
    target directly.
    """
    if selector.energy is not None:
        return float(selector.energy)
    return value_range(h0).lo


def _limit_job(args: tuple[ModelSpec, StateSelector, int, tuple[str, ...]]) -> tuple[int, list[float], bool]:
    spec, selector, n_sites, observables = args
    model = create_model(spec)
    pair = selector.select(model, n_sites)
    values = [classical_expectation(pair.vector, SpherePolynomial.parse(f)) for f in observables]
    logger.debug("N=%d: eigenvalue %r, expectations %s", n_sites, pair.value, values)
    return n_sites, values, pair.degenerate


def _is_geometric(n_grid: list[int]) -> bool:
    ratios = {b / a for a, b in zip(n_grid[:-1], n_grid[1:])}
    return len(ratios) == 1 and next(iter(ratios)) > 1


def convergence_study(
    spec: ModelSpec,
    selector: StateSelector,
    observables: list[str],
    n_grid: list[int],
    workers: int | None = 1,
) -> list[ConvergenceReport]:
    """Track ``⟨ψ_N, Q(f) ψ_N⟩`` against the predicted classical limit.

    Args:
        spec: Model.
        selector: Eigenvector selection rule.
        observables: Polynomial texts f.
        n_grid: Geometric grid with at least four sizes.
        workers: Worker processes.

    Returns:
        One report per observable, in input order.

    Raises:
        PreconditionError: If the grid is not geometric with four or more points.
        LimitStateError: If the target energy violates the limit hypotheses.
    """
    if len(n_grid) < 4 or not _is_geometric(n_grid):
        raise PreconditionError(f"convergence_study needs a geometric N-grid with >= 4 points, got {n_grid}")
    model = create_model(spec)
    h0 = model.principal_symbol
    prediction = limit_state_prediction(h0, target_energy(h0, selector))
    parsed = [SpherePolynomial.parse(f) for f in observables]
    targets = [prediction.expectation(f) for f in parsed]

    jobs = [(spec, selector, n, tuple(observables)) for n in n_grid]
    results = map_jobs(_limit_job, jobs, workers)
    tracking_failed = any(degenerate for _, _, degenerate in results)
    if tracking_failed:
        logger.warning("Eigenvector tracking hit a degenerate level for %s; verdicts are inconclusive", spec.label())

    reports = []
    for i, f in enumerate(observables):
        values = [vals[i] for _, vals, _ in results]
        residuals = [abs(v - targets[i]) for v in values]
        verdict = "inconclusive" if tracking_failed else decay_verdict(residuals, targets[i])
        report = ConvergenceReport(
            f=f,
            selector=selector.describe(),
            target=targets[i],
            n_grid=list(n_grid),
            values=values,
            residuals=residuals,
            exponent=decay_exponent(n_grid, residuals),
            verdict=verdict,
        )
        logger.info(
            "Limit of <%s> for %s: target %r, final residual %.3g, %s",
            f,
            spec.label(),
            targets[i],
            residuals[-1],
            verdict,
        )
        reports.append(report)
    return reports