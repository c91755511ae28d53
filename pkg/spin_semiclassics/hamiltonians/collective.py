"""Collective spin operators of total spin N/2 in the Dicke basis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse

from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.utils.exceptions import PreconditionError


@dataclass(frozen=True)
class CollectiveSpinOps:
    """``S_x``, ``S_y``, ``S_z`` on the symmetric subspace.

    Attributes:
        n_sites: Number of spins N.
        sx: Real tridiagonal operator.
        sy: Imaginary tridiagonal operator.
        sz: Diagonal with entries ``m = N/2 − k``.
    """

    n_sites: int
    sx: QuantizedOperator
    sy: QuantizedOperator
    sz: QuantizedOperator

    @property
    def spin(self) -> float:
        """Total spin j = N/2."""
        return self.n_sites / 2

    def casimir(self) -> QuantizedOperator:
        """``S_x² + S_y² + S_z²``."""
        return self.sx @ self.sx + self.sy @ self.sy + self.sz @ self.sz


def ladder_elements(n_sites: int) -> np.ndarray:
    """``⟨e_k, S_+ e_{k+1}⟩ = √((k+1)(N−k))`` for k = 0..N−1.

    The integer product is symmetric under ``k ↦ N−1−k``, so index reversal
    maps the ladder elements onto themselves bit for bit.
    """
    k = np.arange(n_sites, dtype=np.int64)
    return np.sqrt(((k + 1) * (n_sites - k)).astype(float))


@lru_cache(maxsize=32)
def collective_ops(n_sites: int) -> CollectiveSpinOps:
    """Spin operators for N spins-1/2 restricted to the symmetric subspace.

    Args:
        n_sites: Number of spins N (at least 1).

    Returns:
        The three collective spin components.
    """
    if n_sites < 1:
        raise PreconditionError(f"N must be at least 1, got {n_sites}")
    half = ladder_elements(n_sites) / 2.0
    sx = QuantizedOperator.from_bands(n_sites, {-1: half, 1: half})
    sy = QuantizedOperator.from_bands(n_sites, {-1: 1j * half, 1: -1j * half})
    sz = QuantizedOperator.diagonal(n_sites / 2 - np.arange(n_sites + 1, dtype=float))
    return CollectiveSpinOps(n_sites, sx, sy, sz)


# ----------------------------------------------------------------------
# Tensor-product reference construction (small N only)
# ----------------------------------------------------------------------

TENSOR_LIMIT = 12

_PAULI = {
    "x": sparse.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)),
    "y": sparse.csr_matrix(np.array([[0.0, -1j], [1j, 0.0]])),
    "z": sparse.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)),
}


def _check_tensor_size(n_sites: int) -> None:
    if not 1 <= n_sites <= TENSOR_LIMIT:
        raise PreconditionError(f"Tensor construction needs 1 <= N <= {TENSOR_LIMIT}, got {n_sites}")


def tensor_spin_sum(n_sites: int, axis: str) -> sparse.csr_matrix:
    """``Σ_j σ_axis(j)`` on the full ``2^N``-dimensional space (site 0 is the leftmost factor)."""
    _check_tensor_size(n_sites)
    total = sparse.csr_matrix((2**n_sites, 2**n_sites), dtype=complex)
    for site in range(n_sites):
        left = sparse.identity(2**site, dtype=complex, format="csr")
        right = sparse.identity(2 ** (n_sites - site - 1), dtype=complex, format="csr")
        total = total + sparse.kron(sparse.kron(left, _PAULI[axis]), right, format="csr")
    return total


def dicke_isometry(n_sites: int) -> np.ndarray:
    """Columns ``e_k`` of the symmetric subspace inside ``(ℂ²)^{⊗N}``.

    A set bit in a product-state index is a down spin, so column k is the
    normalized sum of the ``C(N, k)`` product states with k set bits.
    """
    _check_tensor_size(n_sites)
    indices = np.arange(2**n_sites)
    downs = np.array([bin(i).count("1") for i in indices])
    isometry = np.zeros((2**n_sites, n_sites + 1))
    isometry[indices, downs] = 1.0 / np.sqrt([math.comb(n_sites, int(k)) for k in downs])
    return isometry


def compress_to_symmetric(matrix: sparse.spmatrix, n_sites: int) -> np.ndarray:
    """``P_N M P_N`` written in the Dicke basis, as a dense (N+1)×(N+1) array."""
    isometry = dicke_isometry(n_sites)
    return isometry.T @ (matrix @ isometry)
