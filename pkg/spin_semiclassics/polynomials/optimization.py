"""Range, sup-norm and critical points of real polynomials on S².

All three operations share one pipeline: a Fibonacci lattice brackets the
extrema, a k-nearest-neighbour graph over the lattice picks seeds (discrete
local minima of ``p``, ``-p`` and of the squared tangential gradient), and a
vectorized Riemannian Newton iteration polishes every seed at once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from spin_semiclassics.polynomials.points import (
    RealInterval,
    SpherePoint,
    fibonacci_sphere,
    geodesic_distance,
)
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.utils.exceptions import PolynomialError

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 20_000
NEWTON_ITERATIONS = 50
NEWTON_TOLERANCE = 1e-12
MAX_STEP = 0.5
GRADIENT_ACCEPT = 1e-10
VALUE_TOLERANCE = 1e-8
DEDUPE_RADIUS = 1e-6
NONDEGENERACY_THRESHOLD = 1e-8
_NEIGHBOURS = 9


@dataclass(frozen=True)
class CriticalPoint:
    """A critical point of a polynomial restricted to the sphere.

    Attributes:
        point: Location on S².
        nondegenerate: Whether the tangent-plane Hessian determinant exceeds
            the nondegeneracy threshold in magnitude.
        value: Polynomial value at ``point``.
    """

    point: SpherePoint
    nondegenerate: bool
    value: float


class _Derivatives:
    """Value, ambient gradient and ambient Hessian of a real polynomial."""

    def __init__(self, p: SpherePolynomial) -> None:
        self.p = p.real()
        self.grad = self.p.gradient()
        self.hess = [[g.derivative(j) for j in range(3)] for g in self.grad]

    def at(self, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
        values = np.real(self.p.evaluate_xyz(x, y, z))
        grads = np.stack([np.real(g.evaluate_xyz(x, y, z)) for g in self.grad], axis=-1)
        hess = np.empty((len(pts), 3, 3))
        for i in range(3):
            for j in range(i, 3):
                hess[:, i, j] = hess[:, j, i] = np.real(self.hess[i][j].evaluate_xyz(x, y, z))
        return values, grads, hess


def _tangent_frame(u: np.ndarray) -> np.ndarray:
    """Orthonormal tangent frames, shape (n, 3, 2)."""
    ref = np.zeros_like(u)
    polar = np.abs(u[:, 2]) > 0.9
    ref[polar, 0] = 1.0
    ref[~polar, 2] = 1.0
    e1 = ref - np.sum(ref * u, axis=1, keepdims=True) * u
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(u, e1)
    return np.stack([e1, e2], axis=-1)


def _riemannian(
    derivs: _Derivatives, u: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    values, grads, hess = derivs.at(u)
    frame = _tangent_frame(u)
    g_tan = np.einsum("nia,ni->na", frame, grads)
    radial = np.sum(grads * u, axis=1)
    h_tan = np.einsum("nia,nij,njb->nab", frame, hess, frame) - radial[:, None, None] * np.eye(2)
    return values, g_tan, h_tan, frame


def _newton_polish(derivs: _Derivatives, seeds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Riemannian Newton from every seed.

    Returns:
        Polished unit vectors and their final tangential gradient norms.
    """
    u = np.array(seeds, dtype=float, copy=True)
    scale = max(1.0, derivs.p.scale)
    for _ in range(NEWTON_ITERATIONS):
        _, g_tan, h_tan, frame = _riemannian(derivs, u)
        gnorm = np.linalg.norm(g_tan, axis=1)
        active = gnorm > NEWTON_TOLERANCE * scale
        if not active.any():
            break
        step = -np.einsum("nab,nb->na", np.linalg.pinv(h_tan[active]), g_tan[active])
        tangent = np.einsum("nia,na->ni", frame[active], step)
        length = np.linalg.norm(tangent, axis=1)
        capped = np.minimum(length, MAX_STEP)
        direction = np.divide(tangent, length[:, None], out=np.zeros_like(tangent), where=length[:, None] > 0)
        moved = np.cos(capped)[:, None] * u[active] + np.sin(capped)[:, None] * direction
        u[active] = moved / np.linalg.norm(moved, axis=1, keepdims=True)
    _, g_tan, _, _ = _riemannian(derivs, u)
    return u, np.linalg.norm(g_tan, axis=1)


@lru_cache(maxsize=4)
def _neighbour_table(n: int) -> np.ndarray:
    grid = fibonacci_sphere(n)
    _, idx = cKDTree(grid).query(grid, k=_NEIGHBOURS + 1)
    return idx[:, 1:]


def _local_minima(values: np.ndarray, neighbours: np.ndarray) -> np.ndarray:
    return np.flatnonzero(values <= values[neighbours].min(axis=1))


def _require_real(p: SpherePolynomial, what: str) -> None:
    if not p.is_real:
        raise PolynomialError(f"{what} requires a real polynomial, got '{p.to_text()}'")


def _point(u: np.ndarray) -> SpherePoint:
    return SpherePoint.from_cartesian(float(u[0]), float(u[1]), float(u[2]))


def value_range(p: SpherePolynomial, grid_size: int = DEFAULT_GRID_SIZE) -> RealInterval:
    """Range of a real polynomial over S², with attaining points.

    Args:
        p: Real polynomial.
        grid_size: Size of the bracketing Fibonacci lattice.

    Returns:
        ``[min p, max p]`` with ``argmin``/``argmax`` populated.

    Raises:
        PolynomialError: If ``p`` has complex coefficients.
    """
    _require_real(p, "range")
    if p.degree == 0:
        c = p.coefficient((0, 0, 0)).real
        pole = SpherePoint.north_pole()
        return RealInterval(c, c, pole, pole)

    derivs = _Derivatives(p)
    grid = fibonacci_sphere(grid_size)
    neighbours = _neighbour_table(grid_size)
    values = derivs.at(grid)[0]
    seeds = np.concatenate([_local_minima(values, neighbours), _local_minima(-values, neighbours)])
    polished, _ = _newton_polish(derivs, grid[seeds])
    candidates = np.vstack([grid, polished])
    cand_values = derivs.at(candidates)[0]
    i_min = int(np.argmin(cand_values))
    i_max = int(np.argmax(cand_values))
    logger.debug("Range of %s from %d seeds: [%r, %r]", p, len(seeds), cand_values[i_min], cand_values[i_max])
    return RealInterval(
        float(cand_values[i_min]),
        float(cand_values[i_max]),
        argmin=_point(candidates[i_min]),
        argmax=_point(candidates[i_max]),
    )


def sup_norm(p: SpherePolynomial, grid_size: int = DEFAULT_GRID_SIZE) -> float:
    """Maximum of ``|p|`` over S²."""
    interval = value_range(p, grid_size)
    return max(abs(interval.lo), abs(interval.hi))


def critical_points(
    p: SpherePolynomial,
    energy: float,
    grid_size: int = DEFAULT_GRID_SIZE,
    value_tolerance: float = VALUE_TOLERANCE,
) -> list[CriticalPoint]:
    """Critical points of ``p`` on S² at level ``energy``.

    Seeds are discrete local minima of ``p``, ``-p`` and of the squared
    tangential gradient on the lattice. Polished seeds that converge and lie on
    the requested level are clustered at geodesic distance ``1e-6``.

    Args:
        p: Real polynomial.
        energy: Target critical value.
        grid_size: Size of the seeding Fibonacci lattice.
        value_tolerance: Accepted ``|p(Ω) - energy|``.

    Returns:
        Critical points ordered by descending z then descending x. Empty when
        the level contains none, and for constant polynomials.
    """
    _require_real(p, "critical_points")
    if p.degree == 0:
        return []

    derivs = _Derivatives(p)
    grid = fibonacci_sphere(grid_size)
    neighbours = _neighbour_table(grid_size)
    values, g_tan, _, _ = _riemannian(derivs, np.asarray(grid))
    grad_sq = np.sum(g_tan**2, axis=1)
    seeds = np.unique(
        np.concatenate(
            [
                _local_minima(values, neighbours),
                _local_minima(-values, neighbours),
                _local_minima(grad_sq, neighbours),
            ]
        )
    )
    polished, gnorm = _newton_polish(derivs, grid[seeds])
    final_values, _, h_tan, _ = _riemannian(derivs, polished)
    keep = (gnorm <= GRADIENT_ACCEPT) & (np.abs(final_values - energy) <= value_tolerance)

    found: list[CriticalPoint] = []
    kept_vectors: list[np.ndarray] = []
    for i in np.flatnonzero(keep):
        u = polished[i]
        if any(geodesic_distance(u, v) <= DEDUPE_RADIUS for v in kept_vectors):
            continue
        kept_vectors.append(u)
        det = float(np.linalg.det(h_tan[i]))
        found.append(CriticalPoint(_point(u), abs(det) > NONDEGENERACY_THRESHOLD, float(final_values[i])))

    found.sort(key=lambda c: (-round(c.point.z, 9), -round(c.point.x, 9), -round(c.point.y, 9)))
    logger.debug("Found %d critical points of %s at level %r", len(found), p, energy)
    return found
