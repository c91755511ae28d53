"""Lipkin-Meshkov-Glick model."""

from __future__ import annotations

import logging

from spin_semiclassics.hamiltonians.base import SpinModel, SymbolExpansion
from spin_semiclassics.hamiltonians.collective import collective_ops
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.reflections import Reflection, z_rotation_pi

logger = logging.getLogger(__name__)


class LMGModel(SpinModel):
    """``H_N = −λ/(N(N+2)) (S_x² + γ S_y²) − B/(N+2) S_z``.

    ``S_x²`` and ``S_y²`` only couple Dicke indices of equal parity, so the
    matrix is real with halfband 2 (halfband 0 when γ = 1 since then
    ``S_x² + S_y² = S² − S_z²``).
    """

    def hamiltonian(self, n_sites: int) -> QuantizedOperator:
        """Pentadiagonal Hamiltonian."""
        ops = collective_ops(n_sites)
        lam, gamma, field = self.spec.lam, self.spec.gamma, self.spec.B
        quadratic = ops.sx @ ops.sx + (ops.sy @ ops.sy) * gamma
        operator = quadratic * (-lam / (n_sites * (n_sites + 2))) + ops.sz * (-field / (n_sites + 2))
        # S_y² has purely real entries; drop the zero imaginary parts left by the products
        return QuantizedOperator(n_sites, operator.diagonals.real).trimmed(1e-15 * max(operator.scale, 1.0))

    def symbol(self) -> SymbolExpansion:
        """``h0 = −(λ/4)(x² + γy²) − (B/2) z``, ``h1 = −(3λ/4)(x² + γy²) + λ(1+γ)/4``."""
        lam, gamma, field = self.spec.lam, self.spec.gamma, self.spec.B
        h0 = SpherePolynomial({(2, 0, 0): -lam / 4, (0, 2, 0): -lam * gamma / 4, (0, 0, 1): -field / 2})
        h1 = SpherePolynomial(
            {(2, 0, 0): -0.75 * lam, (0, 2, 0): -0.75 * lam * gamma, (0, 0, 0): lam * (1 + gamma) / 4}
        )
        return SymbolExpansion(h0, ((1, h1),), tag="exact")

    def claimed_symbol(self) -> SymbolExpansion:
        """The literature's ``h0 = −(1/4)(x² + γy²) − B z`` with ``h1 = −(3/2)(x² + γy²) + 1``."""
        gamma, field = self.spec.gamma, self.spec.B
        h0 = SpherePolynomial({(2, 0, 0): -0.25, (0, 2, 0): -0.25 * gamma, (0, 0, 1): -field})
        h1 = SpherePolynomial({(2, 0, 0): -1.5, (0, 2, 0): -1.5 * gamma, (0, 0, 0): 1.0})
        return SymbolExpansion(h0, ((1, h1),), tag="claimed")

    def symmetry(self) -> Reflection:
        """Rotation by π about z, which fixes S_z and both squares S_x², S_y²."""
        return z_rotation_pi()
