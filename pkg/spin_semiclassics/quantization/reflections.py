"""Involutive symmetries of the sphere and their action on Dicke vectors.

A :class:`Reflection` pairs a point map on S² with its unitary implementation
``U e_k = phases[k] e_{perm[k]}``. Both implemented symmetries are rotations
by π, so ``U`` squares to the identity up to a global phase that is dropped.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from spin_semiclassics.polynomials.points import SpherePoint
from spin_semiclassics.quantization.dicke import DickeVector
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.utils.exceptions import PreconditionError

BasisAction = Callable[[int], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class Reflection:
    """An order-two symmetry.

    Attributes:
        name: Short label used in reports.
        point_map: Maps an array of unit vectors with shape (..., 3).
        basis_action: ``N -> (perm, phases)`` describing ``U`` in the Dicke basis.
    """

    name: str
    point_map: Callable[[np.ndarray], np.ndarray]
    basis_action: BasisAction

    def map_point(self, point: SpherePoint) -> SpherePoint:
        """Image of a single point."""
        x, y, z = self.point_map(point.xyz)
        return SpherePoint.from_cartesian(float(x), float(y), float(z))

    def unitary(self, n_sites: int) -> sparse.csr_matrix:
        """Sparse matrix of ``U``."""
        perm, phases = self.basis_action(n_sites)
        k = np.arange(n_sites + 1)
        return sparse.csr_matrix((phases, (perm, k)), shape=(n_sites + 1, n_sites + 1))

    def apply(self, psi: DickeVector) -> DickeVector:
        """``U ψ``."""
        perm, phases = self.basis_action(psi.n_sites)
        out = np.empty_like(psi.coeffs)
        out[perm] = phases * psi.coeffs
        return DickeVector(psi.n_sites, out)

    def conjugate(self, operator: QuantizedOperator) -> QuantizedOperator:
        """``U A U*``."""
        u = self.unitary(operator.n_sites)
        return QuantizedOperator.from_sparse(u @ operator.to_sparse() @ u.conj().T)

    def commutes_with(self, operator: QuantizedOperator, tol: float = 1e-12) -> bool:
        """Whether ``U A U* = A`` entrywise within ``tol·scale``."""
        return self.conjugate(operator).max_abs_difference(operator) <= tol * max(operator.scale, 1.0)

    def sector_basis(self, n_sites: int, sector: int) -> sparse.csc_matrix:
        """Orthonormal basis of the ``U = sector`` eigenspace as sparse columns.

        Columns are ordered by their smallest Dicke index, which keeps
        restricted banded operators banded.

        Args:
            n_sites: Number of spins N.
            sector: Eigenvalue +1 or −1.

        Returns:
            Sparse matrix of shape ``(N + 1, dim)``.
        """
        if sector not in (1, -1):
            raise PreconditionError(f"Sector must be +1 or -1, got {sector}")
        perm, phases = self.basis_action(n_sites)
        rows: list[int] = []
        cols: list[int] = []
        data: list[complex] = []
        column = 0
        for k in range(n_sites + 1):
            j = int(perm[k])
            if j == k:
                if np.isclose(phases[k], sector):
                    rows.append(k)
                    cols.append(column)
                    data.append(1.0)
                    column += 1
            elif k < j:
                rows.extend([k, j])
                cols.extend([column, column])
                data.extend([1.0 / np.sqrt(2.0), sector * phases[k] / np.sqrt(2.0)])
                column += 1
        return sparse.csc_matrix((data, (rows, cols)), shape=(n_sites + 1, column), dtype=complex)

    def restrict(self, operator: QuantizedOperator, sector: int) -> np.ndarray | QuantizedOperator:
        """Compression ``P* A P`` onto a symmetry sector.

        Returns:
            A banded operator, or a dense 1×1 array when the sector is
            one-dimensional.
        """
        basis = self.sector_basis(operator.n_sites, sector)
        if basis.shape[1] == 0:
            raise PreconditionError(f"Sector {sector} of {self.name} is empty at N={operator.n_sites}")
        compressed = basis.conj().T @ operator.to_sparse() @ basis
        if basis.shape[1] == 1:
            return compressed.toarray()
        return QuantizedOperator.from_sparse(compressed, tol=1e-15 * max(operator.scale, 1.0))

    def lift(self, coeffs: np.ndarray, n_sites: int, sector: int) -> DickeVector:
        """Embed sector coordinates back into the full Dicke basis."""
        return DickeVector(n_sites, self.sector_basis(n_sites, sector) @ np.asarray(coeffs))


def _flip_action(n_sites: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n_sites + 1)
    return n_sites - k, np.ones(n_sites + 1, dtype=complex)


def _z_rotation_action(n_sites: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n_sites + 1)
    return k, np.where(k % 2 == 0, 1.0, -1.0).astype(complex)


def _flip_points(xyz: np.ndarray) -> np.ndarray:
    return np.asarray(xyz) * np.array([1.0, -1.0, -1.0])


def _z_rotation_points(xyz: np.ndarray) -> np.ndarray:
    return np.asarray(xyz) * np.array([-1.0, -1.0, 1.0])


def z2_flip() -> Reflection:
    """``(x, y, z) ↦ (x, −y, −z)``, index reversal ``e_k ↦ e_{N−k}``."""
    return Reflection("flip", _flip_points, _flip_action)


def z_rotation_pi() -> Reflection:
    """``(x, y, z) ↦ (−x, −y, z)``, ``e_k ↦ (−1)^k e_k``."""
    return Reflection("z-rotation", _z_rotation_points, _z_rotation_action)
