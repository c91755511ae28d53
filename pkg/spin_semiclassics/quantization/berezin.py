"""Berezin quantization, Berezin transform and Husimi densities.

``quantize`` integrates ``p(Ω)|v^(Ω)⟩⟨v^(Ω)|`` over the sphere with a product
rule (uniform in φ, Gauss–Legendre in t = cos θ) whose node counts make the
integration exact for polynomial symbols. Husimi masses of regions use the
same rule at a fixed high resolution since indicators are not polynomial.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable

import numpy as np
from scipy import special

from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.polynomials.sphere_polynomial import Monomial, SpherePolynomial, reduce_mod_sphere
from spin_semiclassics.quantization.dicke import DickeVector, coherent_state
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.quadrature import dicke_amplitudes, gauss_legendre, product_rule_sizes
from spin_semiclassics.utils.exceptions import PolynomialError, PreconditionError

logger = logging.getLogger(__name__)

Region = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

_CHUNK_ELEMENTS = 4_000_000
MIN_HUSIMI_RESOLUTION = 64


def _sphere_grid(t: np.ndarray, n_phi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    x = s[:, None] * np.cos(phi)[None, :]
    y = s[:, None] * np.sin(phi)[None, :]
    z = np.broadcast_to(t[:, None], x.shape)
    return x, y, z


def quantize(p: SpherePolynomial, n_sites: int, oversample: int = 1) -> QuantizedOperator:
    """Berezin quantization ``Q_{1/N}(p)``.

    Args:
        p: Canonical polynomial of degree d.
        n_sites: Number of spins N.
        oversample: Multiplies both node counts; results must not change.

    Returns:
        Operator of halfband ``min(d, N)``, Hermitized when ``p`` is real.

    Raises:
        PolynomialError: If ``p`` is not in canonical form.
    """
    if not p.canonical:
        raise PolynomialError(f"quantize needs a canonical polynomial; reduce '{p.to_text()}' first")
    if n_sites < 1:
        raise PreconditionError(f"N must be at least 1, got {n_sites}")
    degree = p.degree
    n_phi, n_t = product_rule_sizes(n_sites, degree)
    n_phi, n_t = n_phi * oversample, n_t * oversample
    t, w = gauss_legendre(n_t)

    values = p.evaluate_xyz(*_sphere_grid(t, n_phi))
    fourier = np.fft.ifft(values, axis=1)
    amps = dicke_amplitudes(n_sites, t)
    halfband = min(degree, n_sites)
    dim = n_sites + 1

    bands = np.zeros((2 * halfband + 1, dim), dtype=complex)
    chunk = max(1, _CHUNK_ELEMENTS // n_t)
    for o in range(-halfband, halfband + 1):
        weighted = w * fourier[:, (-o) % n_phi]
        length = dim - abs(o)
        for start in range(0, length, chunk):
            stop = min(start + chunk, length)
            prod = amps[start:stop] * amps[start + abs(o) : stop + abs(o)]
            bands[halfband + o, start:stop] = (prod * weighted).sum(axis=1)
    bands *= (n_sites + 1) / 2.0

    operator = QuantizedOperator(n_sites, bands)
    if p.is_real:
        operator = operator.hermitized()
    logger.debug("Quantized degree-%d symbol at N=%d with %dx%d nodes", degree, n_sites, n_t, n_phi)
    return operator


def berezin_transform(f: SpherePolynomial, n_sites: int, point: SpherePoint) -> float:
    """Coherent-state expectation ``⟨v^(Ω), Q(f) v^(Ω)⟩``."""
    operator = quantize(reduce_mod_sphere(f), n_sites)
    return operator.expectation(coherent_state(n_sites, point)).real


def husimi_density(psi: DickeVector, point: SpherePoint) -> float:
    """``|⟨v^(Ω), ψ⟩|²``."""
    return abs(coherent_state(psi.n_sites, point).inner(psi)) ** 2


def husimi_at(psi: DickeVector, xyz: np.ndarray) -> np.ndarray:
    """Husimi density at an array of unit vectors with shape (n, 3)."""
    xyz = np.atleast_2d(xyz)
    phi = np.arctan2(xyz[:, 1], xyz[:, 0])
    amps = dicke_amplitudes(psi.n_sites, xyz[:, 2]) * psi.coeffs[:, None]
    phases = np.exp(-1j * np.outer(np.arange(psi.n_sites + 1), phi))
    return np.abs(np.sum(amps * phases, axis=0)) ** 2


def husimi_grid(psi: DickeVector, n_theta: int = 91, n_phi: int = 180) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Husimi density on a regular (θ, φ) grid for plotting.

    Returns:
        ``(theta, phi, density)`` with density of shape ``(n_theta, n_phi)``.
    """
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(-np.pi, np.pi, n_phi, endpoint=False)
    amps = dicke_amplitudes(psi.n_sites, np.cos(theta)) * psi.coeffs[:, None]
    phases = np.exp(-1j * np.outer(np.arange(psi.n_sites + 1), phi))
    density = np.abs(amps.T @ phases) ** 2
    return theta, phi, density


def husimi_mass(psi: DickeVector, region: Region, resolution: int | None = None) -> float:
    """Husimi measure ``(N+1)/(4π) ∫_region B_ψ dΩ``.

    Args:
        psi: Unit vector.
        region: Vectorized indicator on Cartesian coordinate arrays.
        resolution: Nodes per axis; defaults to ``max(4N, 64)``.

    Returns:
        The mass of ``region``; 1 for the whole sphere.
    """
    n = psi.n_sites
    nodes = resolution or max(4 * n, MIN_HUSIMI_RESOLUTION)
    if nodes < n + 1:
        raise PreconditionError(f"Husimi resolution {nodes} must exceed N={n}")
    t, w = gauss_legendre(nodes)
    amps = dicke_amplitudes(n, t) * psi.coeffs[:, None]
    chunk = max(1, _CHUNK_ELEMENTS // nodes)
    total = 0.0
    for start in range(0, nodes, chunk):
        stop = min(start + chunk, nodes)
        # the FFT kernel is e^{-ikφ_m}, the conjugate phase of the coherent state
        overlaps = np.fft.fft(amps[:, start:stop].T, n=nodes, axis=1)
        x, y, z = _sphere_grid(t[start:stop], nodes)
        mask = np.asarray(region(x, y, z), dtype=bool)
        total += float(np.sum(w[start:stop, None] * np.abs(overlaps) ** 2 * mask))
    return (n + 1) / (2.0 * nodes) * total


# ----------------------------------------------------------------------
# Regions
# ----------------------------------------------------------------------


def full_sphere(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """The whole sphere."""
    return np.ones(np.shape(x), dtype=bool)


def empty_region(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """No point."""
    return np.zeros(np.shape(x), dtype=bool)


def cap_region(center: SpherePoint, radius: float) -> Region:
    """Closed geodesic cap of the given angular radius."""
    cx, cy, cz = center.x, center.y, center.z
    threshold = math.cos(radius)

    def region(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        return cx * x + cy * y + cz * z >= threshold

    return region


def hemisphere(axis: int, sign: int = 1) -> Region:
    """Points whose ``axis`` coordinate has the given sign (boundary excluded)."""

    def region(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        return sign * (x, y, z)[axis] > 0

    return region


def level_band_region(h0: SpherePolynomial, energy: float, margin: float) -> Region:
    """``{Ω : |h0(Ω) − energy| ≥ margin}``, the forbidden region at that energy."""

    def region(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        return np.abs(np.real(h0.evaluate_xyz(x, y, z)) - energy) >= margin

    return region


def point_region(predicate: Callable[[SpherePoint], bool]) -> Region:
    """Lift a pointwise predicate on ``SpherePoint`` to a vectorized region."""

    def single(x: float, y: float, z: float) -> bool:
        return bool(predicate(SpherePoint.from_cartesian(x, y, z)))

    vectorized = np.vectorize(single, otypes=[bool])

    def region(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        return vectorized(x, y, z)

    return region


# ----------------------------------------------------------------------
# Closed-form oracle
# ----------------------------------------------------------------------


def _azimuthal_integral(a: int, b: int, mode: int) -> complex:
    """``∫_0^{2π} cos^a φ sin^b φ e^{i·mode·φ} dφ`` by binomial expansion."""
    total = 0j
    for p in range(a + 1):
        for q in range(b + 1):
            if 2 * p - a + 2 * q - b + mode == 0:
                total += math.comb(a, p) * math.comb(b, q) * (-1) ** (b - q)
    return 2 * math.pi * total / (2**a * (2j) ** b)


def monomial_matrix_element(n_sites: int, monomial: Monomial, row: int, col: int) -> complex:
    """Closed-form entry ``(row, col)`` of ``Q(x^a y^b z^c)`` via Beta integrals.

    Intended for cross-checks at small N (exact arithmetic is not used).
    """
    a, b, c = monomial
    phi_part = _azimuthal_integral(a, b, row - col)
    if phi_part == 0:
        return 0j
    jk = row + col
    beta_exp = (a + b) / 2 + jk / 2
    t_part = 0.0
    for r in range(c + 1):
        alpha_exp = (a + b) / 2 + n_sites - jk / 2 + r
        t_part += math.comb(c, r) * 2**r * (-1) ** (c - r) * special.beta(alpha_exp + 1, beta_exp + 1)
    t_part *= 2 ** (a + b + 1)
    norm = math.sqrt(math.comb(n_sites, row) * math.comb(n_sites, col))
    return (n_sites + 1) / (4 * math.pi) * norm * phi_part * t_part
