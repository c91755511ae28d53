"""Model registry and factory."""

from __future__ import annotations

import logging

from spin_semiclassics.hamiltonians.base import SpinModel
from spin_semiclassics.hamiltonians.curie_weiss import CurieWeissModel
from spin_semiclassics.hamiltonians.custom import CustomSymbolModel
from spin_semiclassics.hamiltonians.lmg import LMGModel
from spin_semiclassics.models.schemas import ModelKind, ModelSpec
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Registry: model kind → model class
MODEL_REGISTRY: dict[ModelKind, type[SpinModel]] = {
    ModelKind.CURIE_WEISS: CurieWeissModel,
    ModelKind.LMG: LMGModel,
    ModelKind.CUSTOM: CustomSymbolModel,
}


def create_model(spec: ModelSpec) -> SpinModel:
    """Create a model instance for the given specification.

    Args:
        spec: Validated model specification.

    Returns:
        A model instance.

    Raises:
        ConfigurationError: If the kind is not registered.
    """
    model_cls = MODEL_REGISTRY.get(spec.kind)
    if model_cls is None:
        supported = ", ".join(sorted(k.value for k in MODEL_REGISTRY))
        raise ConfigurationError(f"Unknown model kind '{spec.kind}'. Supported kinds: {supported}")
    return model_cls(spec)


def cw_hamiltonian(n_sites: int, coupling: float, field: float) -> QuantizedOperator:
    """Curie-Weiss Hamiltonian for coupling J and transverse field B."""
    return CurieWeissModel(ModelSpec(kind=ModelKind.CURIE_WEISS, J=coupling, B=field)).hamiltonian(n_sites)


def lmg_hamiltonian(n_sites: int, lam: float, gamma: float, field: float) -> QuantizedOperator:
    """LMG Hamiltonian for coupling λ, anisotropy γ and field B.

    Parameters are not range-checked here, so the decoupled case λ = 0 is allowed.
    """
    spec = ModelSpec.model_construct(kind=ModelKind.LMG, lam=lam, gamma=gamma, B=field)
    return LMGModel(spec).hamiltonian(n_sites)
