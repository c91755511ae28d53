"""Models given directly by a user-supplied symbol expansion."""

from __future__ import annotations

import logging
from functools import cached_property

from spin_semiclassics.hamiltonians.base import SpinModel, SymbolExpansion
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, reduce_mod_sphere
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.reflections import Reflection, z2_flip, z_rotation_pi

logger = logging.getLogger(__name__)

# monomial sign under each reflection, keyed by reflection name
_SIGN_RULES = {
    "flip": lambda a, b, c: (-1) ** (b + c),
    "z-rotation": lambda a, b, c: (-1) ** (a + b),
}


def _invariant(p: SpherePolynomial, rule) -> bool:
    return all(rule(*m) == 1 for m in reduce_mod_sphere(p).terms)


class CustomSymbolModel(SpinModel):
    """``H_N = Q_{1/N}(h0 + Σ_k N^{−k} h_k)`` for user symbols."""

    @cached_property
    def _expansion(self) -> SymbolExpansion:
        h0 = SpherePolynomial.parse(self.spec.h0 or "0")
        corrections = tuple(
            (k, SpherePolynomial.parse(text)) for k, text in enumerate(self.spec.corrections, start=1)
        )
        return SymbolExpansion(h0, corrections, tag="user")

    def hamiltonian(self, n_sites: int) -> QuantizedOperator:
        """Quantization of the full symbol at this N."""
        return self._expansion.quantize(n_sites)

    def symbol(self) -> SymbolExpansion:
        """The user symbol."""
        return self._expansion

    def symmetry(self) -> Reflection | None:
        """First built-in reflection leaving every symbol term invariant."""
        terms = [self._expansion.h0, *(h for _, h in self._expansion.corrections)]
        for reflection in (z2_flip(), z_rotation_pi()):
            if all(_invariant(h, _SIGN_RULES[reflection.name]) for h in terms):
                logger.debug("Custom symbol is invariant under %s", reflection.name)
                return reflection
        return None
