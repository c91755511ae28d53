"""Curie-Weiss model with a transverse field."""

from __future__ import annotations

import logging

from spin_semiclassics.hamiltonians.base import SpinModel, SymbolExpansion
from spin_semiclassics.hamiltonians.collective import collective_ops
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.reflections import Reflection, z2_flip

logger = logging.getLogger(__name__)


class CurieWeissModel(SpinModel):
    """``H_N = (1/(N+2)) (−(J/2N) Σ_ij σ_z(i)σ_z(j) − B Σ_j σ_x(j))`` on Sym^N.

    In collective operators ``H_N = −(2J/(N(N+2))) S_z² − (2B/(N+2)) S_x``, a real
    tridiagonal matrix.
    """

    def hamiltonian(self, n_sites: int) -> QuantizedOperator:
        """Tridiagonal Hamiltonian built from ``S_z²`` and ``S_x``."""
        ops = collective_ops(n_sites)
        coupling, field = self.spec.J, self.spec.B
        m = ops.sz.band(0).real
        diagonal = -(2.0 * coupling / (n_sites * (n_sites + 2))) * m**2
        off = -(2.0 * field / (n_sites + 2)) * ops.sx.band(1).real
        return QuantizedOperator.from_bands(n_sites, {-1: off, 0: diagonal, 1: off}).trimmed()

    def symbol(self) -> SymbolExpansion:
        """``h0 = −(J/2) z² − B x`` and ``h1 = −(3J/2) z² + J/2``, exact at every N."""
        coupling, field = self.spec.J, self.spec.B
        h0 = SpherePolynomial({(0, 0, 2): -coupling / 2, (1, 0, 0): -field})
        h1 = SpherePolynomial({(0, 0, 2): -1.5 * coupling, (0, 0, 0): coupling / 2})
        return SymbolExpansion(h0, ((1, h1),), tag="exact")

    def claimed_symbol(self) -> SymbolExpansion:
        """The literature's ``h_N = h0 + N^{−1}(−3J z² + 1)``."""
        coupling, field = self.spec.J, self.spec.B
        h0 = SpherePolynomial({(0, 0, 2): -coupling / 2, (1, 0, 0): -field})
        h1 = SpherePolynomial({(0, 0, 2): -3.0 * coupling, (0, 0, 0): 1.0})
        return SymbolExpansion(h0, ((1, h1),), tag="claimed")

    def symmetry(self) -> Reflection:
        """The flip ``(x, y, z) ↦ (x, −y, −z)``."""
        return z2_flip()
