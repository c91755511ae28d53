"""Tests for the acceptance criteria."""

from pathlib import Path

import pytest

from spin_semiclassics.core.config import RunConfig
from spin_semiclassics.core.repro import (
    CRITERIA,
    criterion_dgr,
    criterion_exact_identities,
    criterion_symbol_fit,
    criterion_tensor_oracle,
    run_acceptance,
)
from spin_semiclassics.outputs.file import FileOutput


@pytest.fixture
def config(tmp_path: Path) -> RunConfig:
    return RunConfig(subcommand="repro", out=tmp_path, workers=1)


class TestCriteria:
    """Fast criteria run in the regular suite."""

    def test_ten_criteria(self) -> None:
        assert len(CRITERIA) == 10

    def test_exact_identities(self, config: RunConfig) -> None:
        checks = criterion_exact_identities(config)
        assert len(checks) == 4
        assert all(c.passed for c in checks), [c for c in checks if not c.passed]

    def test_tensor_oracle(self, config: RunConfig) -> None:
        (check,) = criterion_tensor_oracle(config)
        assert check.passed
        assert check.value <= 1e-12

    def test_dgr(self, config: RunConfig) -> None:
        assert all(c.passed for c in criterion_dgr(config))

    def test_symbol_fit(self, config: RunConfig) -> None:
        checks = criterion_symbol_fit(config)
        assert all(c.passed for c in checks)
        assert "disagree" in checks[1].detail


@pytest.mark.slow
class TestAcceptance:
    """Full desk-scale acceptance run."""

    def test_every_criterion_passes(self, config: RunConfig, tmp_path: Path) -> None:
        results = run_acceptance(config, FileOutput(tmp_path))
        failed = [c.name for c in results if not c.passed]
        assert failed == []
        assert (tmp_path / "repro_summary.csv").exists()
