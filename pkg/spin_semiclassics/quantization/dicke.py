"""Vectors in the symmetric subspace and spin coherent states.

The Dicke basis vector ``e_k`` has ``k`` spins down; its S_z eigenvalue is
``m = N/2 − k``. ``e_0`` is the all-up state, which is the coherent state at the
north pole.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.quantization.quadrature import dicke_amplitudes
from spin_semiclassics.utils.exceptions import PreconditionError

UNIT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class DickeVector:
    """Coefficient vector of length N+1 in the Dicke basis.

    Attributes:
        n_sites: Number of spins N (at least 1).
        coeffs: Read-only complex array indexed by the number of down spins.
    """

    n_sites: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        """Validate the dimension and freeze the coefficients."""
        if self.n_sites < 1:
            raise PreconditionError(f"N must be at least 1, got {self.n_sites}")
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (self.n_sites + 1,):
            raise PreconditionError(
                f"Dicke vector for N={self.n_sites} needs {self.n_sites + 1} coefficients, got shape {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def basis(cls, n_sites: int, k: int) -> DickeVector:
        """Basis vector ``e_k``."""
        if not 0 <= k <= n_sites:
            raise PreconditionError(f"Basis index {k} outside 0..{n_sites}")
        coeffs = np.zeros(n_sites + 1, dtype=complex)
        coeffs[k] = 1.0
        return cls(n_sites, coeffs)

    @classmethod
    def random(cls, rng: np.random.Generator, n_sites: int) -> DickeVector:
        """Haar-like random unit vector (normalized complex Gaussian)."""
        raw = rng.standard_normal(n_sites + 1) + 1j * rng.standard_normal(n_sites + 1)
        return cls(n_sites, raw / np.linalg.norm(raw))

    @property
    def dimension(self) -> int:
        """N + 1."""
        return self.n_sites + 1

    @property
    def magnetizations(self) -> np.ndarray:
        """S_z eigenvalue ``m = N/2 − k`` for every basis index."""
        return self.n_sites / 2 - np.arange(self.n_sites + 1)

    def norm(self) -> float:
        """Euclidean norm."""
        return float(np.linalg.norm(self.coeffs))

    def is_unit(self, tol: float = UNIT_TOLERANCE) -> bool:
        """Whether the vector has norm 1 within ``tol``."""
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> DickeVector:
        """Unit vector along this one."""
        norm = self.norm()
        if norm == 0.0:
            raise PreconditionError("Cannot normalize the zero vector")
        return DickeVector(self.n_sites, self.coeffs / norm)

    def inner(self, other: DickeVector) -> complex:
        """Inner product ``⟨self, other⟩``, antilinear in ``self``."""
        return complex(np.vdot(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return f"DickeVector(N={self.n_sites}, norm={self.norm():.12g})"


def coherent_state(n_sites: int, point: SpherePoint) -> DickeVector:
    """Spin coherent state ``v^(Ω)``.

    ``c_k = √C(N,k) cos(θ/2)^{N−k} sin(θ/2)^k e^{ikφ}``; at the south pole the
    azimuth is taken as 0, so the state is exactly ``e_N``.

    Args:
        n_sites: Number of spins N.
        point: Point Ω on the sphere.

    Returns:
        The unit coherent state.
    """
    if n_sites < 1:
        raise PreconditionError(f"N must be at least 1, got {n_sites}")
    amplitudes = dicke_amplitudes(n_sites, np.array([math.cos(point.theta)]))[:, 0]
    phases = np.exp(1j * point.phi * np.arange(n_sites + 1))
    return DickeVector(n_sites, amplitudes * phases)


def overlap(n_sites: int, first: SpherePoint, second: SpherePoint) -> complex:
    """Inner product ``⟨v^(Ω), v^(Ω')⟩`` of two coherent states.

    Coherent states are tensor powers of single-spin states, so the overlap is
    the N-th power of the single-spin overlap. Its modulus is
    ``((1 + t)/2)^{N/2}`` with ``t`` the cosine of the angle between the points.
    """
    c1, s1 = math.cos(first.theta / 2), math.sin(first.theta / 2)
    c2, s2 = math.cos(second.theta / 2), math.sin(second.theta / 2)
    single = c1 * c2 + cmath.exp(1j * (second.phi - first.phi)) * s1 * s2
    return single**n_sites
