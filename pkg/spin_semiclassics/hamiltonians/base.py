"""Base class for mean-field spin models and their classical symbols."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from spin_semiclassics.models.schemas import ModelSpec
from spin_semiclassics.polynomials.optimization import sup_norm
from spin_semiclassics.polynomials.sphere_polynomial import SpherePolynomial, reduce_mod_sphere
from spin_semiclassics.quantization.berezin import quantize
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.quantization.reflections import Reflection
from spin_semiclassics.utils.exceptions import PolynomialError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymbolExpansion:
    """Classical symbol ``h_N = h0 + Σ_k N^{−k} h_k``.

    Attributes:
        h0: Principal symbol.
        corrections: Pairs ``(k, h_k)`` with ``k >= 1``.
        tag: Provenance: ``exact``, ``claimed``, ``fitted`` or ``user``.
    """

    h0: SpherePolynomial
    corrections: tuple[tuple[int, SpherePolynomial], ...] = field(default_factory=tuple)
    tag: str = "exact"

    def __post_init__(self) -> None:
        """Require real symbols and positive correction orders."""
        for k, h in ((0, self.h0), *self.corrections):
            if not h.is_real:
                raise PolynomialError(f"Symbol term h_{k} must be real, got '{h.to_text()}'")
        if any(k < 1 for k, _ in self.corrections):
            raise PolynomialError("Correction orders must be at least 1")

    def correction(self, order: int) -> SpherePolynomial:
        """Sum of the corrections of the given order (zero when absent)."""
        total = SpherePolynomial()
        for k, h in self.corrections:
            if k == order:
                total = total + h
        return total

    def at(self, n_sites: int) -> SpherePolynomial:
        """Canonical ``h_N`` for a concrete N."""
        total = self.h0
        for k, h in self.corrections:
            total = total + h * (float(n_sites) ** -k)
        return reduce_mod_sphere(total)

    def quantize(self, n_sites: int) -> QuantizedOperator:
        """``Q_{1/N}(h_N)``."""
        return quantize(self.at(n_sites), n_sites)

    def correction_bound(self, n_sites: int) -> float:
        """``Σ_k N^{−k} ‖h_k‖_∞``, an upper bound on ``‖Q(h_N) − Q(h0)‖``."""
        return sum(sup_norm(reduce_mod_sphere(h)) * float(n_sites) ** -k for k, h in self.corrections)

    def describe(self) -> str:
        """One-line text rendering."""
        parts = [f"h0 = {self.h0}"]
        parts.extend(f"h{k} = {h}" for k, h in self.corrections)
        return f"[{self.tag}] " + "; ".join(parts)


class SpinModel(ABC):
    """Abstract base class for Hamiltonians on the symmetric subspace.

    Subclasses build the matrix from collective spin operators and expose the
    exact symbol expansion, the claimed one when the literature states it, and
    the order-two symmetry used to select ground-state sectors.

    Attributes:
        spec: Validated model specification.
    """

    def __init__(self, spec: ModelSpec) -> None:
        """Initialize the model.

        Args:
            spec: Validated model specification.
        """
        self.spec = spec

    @abstractmethod
    def hamiltonian(self, n_sites: int) -> QuantizedOperator:
        """Hamiltonian restricted to the symmetric subspace.

        Args:
            n_sites: Number of spins N.

        Returns:
            Banded Hermitian operator.
        """
        ...

    @abstractmethod
    def symbol(self) -> SymbolExpansion:
        """Exact symbol expansion with ``Q(h_N) = H_N``."""
        ...

    def claimed_symbol(self) -> SymbolExpansion | None:
        """Symbol expansion as stated in the literature, when there is one."""
        return None

    def symmetry(self) -> Reflection | None:
        """Order-two symmetry commuting with every ``H_N``, when present."""
        return None

    @property
    def principal_symbol(self) -> SpherePolynomial:
        """``h0``."""
        return self.symbol().h0

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec.label()})"
