"""Tests for Pydantic schema models."""

import json

import pytest
from pydantic import ValidationError

from spin_semiclassics.models.schemas import (
    AxiomReport,
    CheckResult,
    ConvergenceReport,
    DecayReport,
    ModelKind,
    ModelSpec,
    Z2Report,
)


class TestModelSpec:
    """Tests for ModelSpec schema."""

    def test_defaults(self) -> None:
        spec = ModelSpec()
        assert spec.kind is ModelKind.CURIE_WEISS
        assert spec.J == 1.0
        assert spec.B == 0.0

    def test_lambda_alias(self) -> None:
        spec = ModelSpec.model_validate({"kind": "lmg", "lambda": 2.0, "gamma": 0.5})
        assert spec.lam == 2.0
        assert json.loads(spec.cache_key())["lambda"] == 2.0

    @pytest.mark.parametrize(
        "fields",
        [
            {"kind": "lmg", "lambda": 0.0},
            {"kind": "lmg", "gamma": 0.0},
            {"kind": "lmg", "gamma": 1.5},
            {"kind": "lmg", "B": -1.0},
            {"kind": "custom"},
            {"kind": "cw", "unknown": 1},
        ],
    )
    def test_invalid_specs_raise(self, fields: dict) -> None:
        with pytest.raises(ValidationError):
            ModelSpec.model_validate(fields)

    def test_frozen(self) -> None:
        spec = ModelSpec()
        with pytest.raises(ValidationError):
            spec.J = 2.0

    def test_cache_key_distinguishes_parameters(self) -> None:
        assert ModelSpec(B=0.5).cache_key() != ModelSpec(B=0.25).cache_key()
        assert ModelSpec(B=0.5).cache_key() == ModelSpec(B=0.5).cache_key()

    def test_labels(self) -> None:
        assert ModelSpec(J=1.0, B=0.5).label() == "cw(J=1.0, B=0.5)"
        assert ModelSpec(kind=ModelKind.CUSTOM, h0="x").label() == "custom(h0=x)"


class TestReports:
    """Tests for report schemas."""

    def test_z2_invariance_follows_parity(self) -> None:
        assert Z2Report(even_residual=0.0, odd_residual=2.0, husimi_asymmetry=0.0, parity=1).invariant
        assert not Z2Report(even_residual=1.4, odd_residual=1.4, husimi_asymmetry=0.9).invariant

    def test_axiom_report_passed(self) -> None:
        checks = [CheckResult(name="unit", passed=True), CheckResult(name="positivity", passed=False)]
        assert not AxiomReport(seed=0, count=1, degree=1, n_list=[2], checks=checks).passed
        assert AxiomReport(seed=0, count=1, degree=1, n_list=[2], checks=checks[:1]).passed

    def test_decay_verdict_is_restricted(self) -> None:
        with pytest.raises(ValidationError):
            DecayReport(n_grid=[1, 2], values=[1.0, 0.5], ratios=[2.0], verdict="fine")

    def test_convergence_records(self) -> None:
        report = ConvergenceReport(
            f="x",
            selector="index=0",
            target=0.5,
            n_grid=[8, 16],
            values=[0.4, 0.45],
            residuals=[0.1, 0.05],
        )
        rows = report.records()
        assert [r.N for r in rows] == [8, 16]
        assert rows[1].residual == 0.05
        assert rows[0].target == 0.5

    def test_serialization_roundtrip(self) -> None:
        report = DecayReport(n_grid=[8, 16], values=[0.1, 0.05], ratios=[2.0], exponent=1.0, verdict="converging")
        restored = DecayReport.model_validate(report.model_dump())
        assert restored == report
