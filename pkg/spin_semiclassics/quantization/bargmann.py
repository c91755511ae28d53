"""Fock–Bargmann representation of the symmetric subspace.

Convention: for ``z = tan(θ/2)·e^{−iφ}`` (the stereographic coordinate of Ω),
``Ψ(z) = ⟨v^(Ω), ψ⟩ = (1 + |z|²)^{−N/2} Σ_k ψ_k √C(N,k) z^k``. The coefficients
of ``p(z)`` in the basis ``w_k = √C(N,k) z^k`` are therefore exactly the Dicke
coefficients of ψ, and ``|Ψ|²`` is the Husimi density.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.quadrature import dicke_amplitudes, gauss_legendre, log_binomials
from spin_semiclassics.utils.exceptions import PreconditionError


def stereographic(point: SpherePoint) -> complex:
    """Stereographic coordinate ``tan(θ/2)·e^{−iφ}`` (projection from the south pole).

    Raises:
        PreconditionError: At the south pole, which maps to infinity.
    """
    if point.theta == math.pi:
        raise PreconditionError("The south pole has no finite stereographic coordinate")
    return math.tan(point.theta / 2) * cmath.exp(-1j * point.phi)


def inverse_stereographic(z: complex) -> SpherePoint:
    """Sphere point with stereographic coordinate ``z``."""
    return SpherePoint(2.0 * math.atan(abs(z)), -cmath.phase(z) if z != 0 else 0.0)


@dataclass(frozen=True, eq=False)
class BargmannFunction:
    """``Ψ(z) = (1+|z|²)^{−N/2} p(z)`` with ``p`` of degree at most N.

    Attributes:
        n_sites: Number of spins N.
        coeffs: Coefficients of ``p`` in the basis ``√C(N,k) z^k``.
    """

    n_sites: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        """Freeze coefficients."""
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (self.n_sites + 1,):
            raise PreconditionError(f"Expected {self.n_sites + 1} coefficients, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def monomial_coefficients(self) -> np.ndarray:
        """Coefficients of ``p`` in the plain monomial basis ``z^k``."""
        return self.coeffs * np.exp(0.5 * log_binomials(self.n_sites))

    def __call__(self, z: complex | np.ndarray) -> complex | np.ndarray:
        """Evaluate Ψ, stable for large N and large |z|."""
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
        modulus_sq = np.abs(z_arr) ** 2
        t = (1.0 - modulus_sq) / (1.0 + modulus_sq)
        phases = np.exp(1j * np.outer(np.arange(self.n_sites + 1), np.angle(z_arr)))
        values = np.sum(self.coeffs[:, None] * dicke_amplitudes(self.n_sites, t) * phases, axis=0)
        return complex(values[0]) if np.ndim(z) == 0 else values

    def norm(self) -> float:
        """Fock–Bargmann norm ``((N+1)/π ∫ |p|² (1+|z|²)^{−(N+2)} d²z)^{1/2}``.

        With ``u = |z|²/(1+|z|²)`` the measure becomes ``du dα / 2`` and ``|Ψ|²``
        averaged over the angle is a degree-N polynomial in u, so Gauss–Legendre
        in u times a uniform angular rule is exact.
        """
        n = self.n_sites
        n_angle = n + 1
        nodes, weights = gauss_legendre(math.ceil((n + 1) / 2) + 1)
        u = (nodes + 1.0) / 2.0
        radius = np.sqrt(u / (1.0 - u))
        angle = 2.0 * np.pi * np.arange(n_angle) / n_angle
        z = radius[:, None] * np.exp(1j * angle)[None, :]
        density = np.abs(self(z.ravel())).reshape(z.shape) ** 2
        # (N+1)/(2π) ∫_0^1 du ∫_0^{2π} dα |Ψ|², with du = dnode/2
        integral = np.sum(weights[:, None] * density) / 2.0 * (2.0 * np.pi / n_angle)
        return math.sqrt((n + 1) / (2.0 * np.pi) * integral)

    def to_dicke(self) -> DickeVector:
        """Inverse of :func:`bargmann_transform`."""
        return DickeVector(self.n_sites, self.coeffs)


def bargmann_transform(psi: DickeVector) -> BargmannFunction:
    """Fock–Bargmann function of a Dicke vector (an isometry)."""
    return BargmannFunction(psi.n_sites, psi.coeffs)
