"""Pydantic v2 models for model specifications and study reports."""

from __future__ import annotations

import json
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

Verdict = Literal["converging", "inconclusive", "diverging"]


class ModelKind(str, Enum):
    """Supported Hamiltonian families."""

    CURIE_WEISS = "cw"
    LMG = "lmg"
    CUSTOM = "custom"


class ModelSpec(BaseModel):
    """A mean-field spin model and its parameters."""

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    kind: ModelKind = Field(ModelKind.CURIE_WEISS, description="Model family: cw | lmg | custom")
    J: float = Field(1.0, description="Curie-Weiss spin-spin coupling")
    B: float = Field(0.0, description="External field (transverse for cw, longitudinal for lmg)")
    lam: float = Field(1.0, alias="lambda", description="LMG ferromagnetic coupling, > 0")
    gamma: float = Field(1.0, description="LMG anisotropy in (0, 1]")
    h0: str | None = Field(None, description="Principal symbol for custom models")
    corrections: list[str] = Field(default_factory=list, description="Custom symbol corrections h_1, h_2, ...")

    @model_validator(mode="after")
    def validate_ranges(self) -> ModelSpec:
        """Check the parameter ranges of each family."""
        if self.kind is ModelKind.LMG:
            if self.lam <= 0:
                raise ValueError(f"LMG requires lambda > 0, got {self.lam}")
            if not 0 < self.gamma <= 1:
                raise ValueError(f"LMG requires gamma in (0, 1], got {self.gamma}")
            if self.B < 0:
                raise ValueError(f"LMG requires B >= 0, got {self.B}")
        if self.kind is ModelKind.CUSTOM and not self.h0:
            raise ValueError("Custom models need a principal symbol h0")
        return self

    def label(self) -> str:
        """Short human-readable description."""
        if self.kind is ModelKind.CURIE_WEISS:
            return f"cw(J={self.J!r}, B={self.B!r})"
        if self.kind is ModelKind.LMG:
            return f"lmg(lambda={self.lam!r}, gamma={self.gamma!r}, B={self.B!r})"
        return f"custom(h0={self.h0})"

    def cache_key(self) -> str:
        """Canonical JSON used for content hashing."""
        return json.dumps(self.model_dump(mode="json", by_alias=True), sort_keys=True)


class CheckResult(BaseModel):
    """Outcome of a single numerical check."""

    name: str = Field(..., description="Check identifier")
    passed: bool = Field(..., description="Whether the check met its threshold")
    value: float | None = Field(None, description="Observed value")
    threshold: float | None = Field(None, description="Threshold the value was compared against")
    detail: str = Field("", description="Free-form diagnostics")


class DecayReport(BaseModel):
    """A positive quantity tracked along a geometric N-grid."""

    n_grid: list[int] = Field(..., description="Sizes N, strictly increasing")
    values: list[float] = Field(..., description="Quantity at each N")
    ratios: list[float | None] = Field(..., description="values[i] / values[i+1]; None below the numerical floor")
    exponent: float | None = Field(None, description="Fitted p in value ~ N^-p")
    verdict: Verdict = Field("inconclusive", description="Decay verdict")


class ConvergenceRecord(BaseModel):
    """One (N, f) row of a classical-limit study."""

    N: int
    f: str
    value: float
    target: float
    residual: float


class ConvergenceReport(BaseModel):
    """Expectation values of one observable along an N-grid versus the predicted limit."""

    f: str = Field(..., description="Observable in polynomial text form")
    selector: str = Field(..., description="Eigenvector selection rule")
    target: float = Field(..., description="Limit predicted from the critical points")
    n_grid: list[int]
    values: list[float]
    residuals: list[float]
    exponent: float | None = None
    verdict: Verdict = "inconclusive"

    def records(self) -> list[ConvergenceRecord]:
        """Flatten into CSV rows."""
        return [
            ConvergenceRecord(N=n, f=self.f, value=v, target=self.target, residual=r)
            for n, v, r in zip(self.n_grid, self.values, self.residuals)
        ]


class SpectrumDistanceRecord(BaseModel):
    """Distance from the symbol range to the spectrum at one N."""

    N: int
    distance: float
    range_lo: float
    range_hi: float
    spectrum_lo: float
    spectrum_hi: float
    containment_excess: float = Field(..., description="How far the spectrum leaves the range (0 when contained)")


class WeylReport(BaseModel):
    """Eigenvalue shifts caused by the symbol corrections at one N."""

    N: int
    max_gap: float
    bound: float
    passed: bool


class Z2Report(BaseModel):
    """Reflection symmetry of a vector."""

    even_residual: float = Field(..., description="||U psi - psi||")
    odd_residual: float = Field(..., description="||U psi + psi||")
    husimi_asymmetry: float = Field(..., description="max |B(x) - B(R x)| over the test grid")
    parity: int | None = Field(None, description="+1 or -1 when the vector is symmetric within tolerance")

    @property
    def invariant(self) -> bool:
        """Whether the vector is a reflection eigenvector."""
        return self.parity is not None


class SSBRecord(BaseModel):
    """Ground-state symmetry data at one N."""

    N: int
    ground_energy: float
    gap: float
    pure: bool = True
    z2_invariant: bool
    even_residual: float
    odd_residual: float
    husimi_asymmetry: float
    cap_masses: list[float]
    cap_total: float


class SSBReport(BaseModel):
    """Spontaneous symmetry breaking summary."""

    model: str
    minima: list[list[float]] = Field(..., description="Cartesian minima of the principal symbol")
    min_value: float
    cap_radius: float
    records: list[SSBRecord]
    limit_support: int
    limit_entropy: float
    broken: bool = Field(..., description="Invariant pure finite-N states with a mixed limit")
    verdict: str


class SymbolFitReport(BaseModel):
    """Least-squares fit of the first symbol correction."""

    model: str
    n_grid: list[int]
    basis: list[str]
    coefficients: list[float]
    fitted_h1: str
    residuals: list[float] = Field(..., description="||H_N - Q(h0 + h1/N)|| per N")
    scaled_residuals: list[float] = Field(..., description="N^2 times the residuals")
    unfitted_residuals: list[float] = Field(..., description="||H_N - Q(h0)|| per N")
    claimed_h1: str | None = None
    claimed_residuals: list[float] | None = None
    agreement: Literal["agree", "disagree", "no-claim"] = "no-claim"
    max_claim_deviation: float | None = None


class DGRRecord(BaseModel):
    """Commutator defect of one pair at one N."""

    N: int
    f: str
    g: str
    hbar: str
    sign: int
    defect: float


class AxiomReport(BaseModel):
    """Results of the quantization property suite."""

    seed: int
    count: int
    degree: int
    n_list: list[int]
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return all(c.passed for c in self.checks)


class ForbiddenRecord(BaseModel):
    """Husimi mass of an eigenvector in the forbidden region at one N."""

    N: int
    energy: float
    target_energy: float
    margin: float
    mass: float


class DGRCalibration(BaseModel):
    """Outcome of choosing the effective Planck constant and bracket sign."""

    n_small: int = Field(..., description="Size at which candidates are ranked")
    candidates: list[DGRRecord] = Field(..., description="(x, y) defect of every candidate at n_small")
    hbar: str = Field(..., description="Chosen effective Planck constant")
    sign: int = Field(..., description="Chosen bracket orientation")
    grid: DecayReport = Field(..., description="(x, y) defect of the chosen convention along the check grid")
    verdict: Literal["exact", "converging"] = Field(..., description="exact when the defect vanishes identically")


class NormRecord(BaseModel):
    """Operator norm of a quantized symbol against its sup norm at one N."""

    N: int
    f: str
    operator_norm: float
    sup_norm: float
    deficit: float = Field(..., description="sup_norm - operator_norm")
