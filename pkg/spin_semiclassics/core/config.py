"""Run configuration: pydantic validation, config files, env-var and CLI overrides."""

from __future__ import annotations

import logging
import os
import typing
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from spin_semiclassics.models.schemas import ModelKind, ModelSpec
from spin_semiclassics.semiclassics.decay import geometric_grid
from spin_semiclassics.semiclassics.limits import StateSelector
from spin_semiclassics.utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

Subcommand = Literal["axioms", "quantize", "spectrum", "limit", "dgr", "husimi", "ssb", "fit-symbol", "repro"]

SUBCOMMANDS: tuple[str, ...] = typing.get_args(Subcommand)

CACHE_DIR_ENV = "SPIN_SEMICLASSICS_CACHE_DIR"
WORKERS_ENV = "SPIN_SEMICLASSICS_WORKERS"


# ---------------------------------------------------------------------------
# Value parsers
# ---------------------------------------------------------------------------


def parse_n_grid(value: str | int | list[int]) -> list[int]:
    """Parse an N-grid.

    Accepts a comma list (``8,16,32``), a geometric range ``start:stop:factor``
    (``64:1024:2``), a single integer, or an already parsed list.
    """
    if isinstance(value, int):
        return [value]
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    text = str(value).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"N range must be start:stop:factor, got '{text}'")
        start, stop, factor = (int(p) for p in parts)
        return geometric_grid(start, stop, factor)
    return [int(p) for p in text.split(",") if p.strip()]


def _split_list(value: str | list[str] | None, separator: str) -> list[str]:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return [str(v).strip() for v in value]
    return [part.strip() for part in str(value).split(separator) if part.strip()]


# ---------------------------------------------------------------------------
# Pydantic config model
# ---------------------------------------------------------------------------


class RunConfig(BaseModel):
    """Everything one CLI invocation needs."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    subcommand: Subcommand = Field(..., description="Experiment to run")

    model: ModelKind = Field(ModelKind.CURIE_WEISS, description="Model family: cw | lmg | custom")
    J: float = Field(1.0, description="Curie-Weiss coupling")
    B: float = Field(0.0, description="External field")
    lam: float = Field(1.0, alias="lambda", description="LMG coupling")
    gamma: float = Field(1.0, description="LMG anisotropy")
    h0: str | None = Field(None, description="Custom principal symbol")
    h: list[str] = Field(default_factory=list, description="Custom corrections h_1; h_2; ...")

    N: list[int] = Field(default_factory=lambda: [8, 16, 32, 64], description="Sizes, strictly increasing")
    f: list[str] = Field(default_factory=lambda: ["x"], description="Observables / symbols")
    g: list[str] = Field(default_factory=lambda: ["y"], description="Second members of DGR pairs, matched with f")

    seed: int = Field(0, description="Seed fixing every randomized draw")
    count: int = Field(50, gt=0, description="Random polynomials per axiom check")
    degree: int = Field(4, ge=0, description="Degree of random polynomials")
    index: int | None = Field(None, ge=0, description="Eigenvector position (default: ground state)")
    energy: float | None = Field(None, description="Target energy for eigenvector selection")
    cap_radius: float = Field(0.3, gt=0, description="Geodesic cap radius for Husimi masses")
    margin: float = Field(0.2, gt=0, description="Forbidden-region margin")
    n_small: int = Field(32, ge=2, description="Size used to rank DGR conventions")
    tol: float = Field(0.02, gt=0, description="Threshold for final-N distances and residuals")

    out: Path = Field(Path("results"), description="Output directory")
    output: Literal["file", "stdout"] = Field("file", description="Output target")
    format: Literal["csv", "jsonl"] = Field("csv", description="Table format for file output")
    binary: bool = Field(False, description="Binary instead of text operator files")
    cache: bool = Field(True, description="Read and write the result cache")
    cache_dir: Path | None = Field(None, description="Cache directory (default <out>/cache)")
    workers: int | None = Field(None, gt=0, description="Worker processes (default: available CPUs)")

    @field_validator("N", mode="before")
    @classmethod
    def parse_sizes(cls, v: Any) -> list[int]:
        """Accept comma lists and geometric ranges."""
        return parse_n_grid(v)

    @field_validator("N")
    @classmethod
    def validate_sizes(cls, v: list[int]) -> list[int]:
        """Require a nonempty, strictly increasing grid of positive sizes."""
        if not v:
            raise ValueError("N-grid must not be empty")
        if v[0] < 1:
            raise ValueError(f"N must be at least 1, got {v[0]}")
        if any(b <= a for a, b in zip(v[:-1], v[1:])):
            raise ValueError(f"N-grid must be strictly increasing, got {v}")
        return v

    @field_validator("f", "g", mode="before")
    @classmethod
    def parse_observables(cls, v: Any) -> list[str]:
        """Comma-separated polynomial texts."""
        return _split_list(v, ",")

    @field_validator("h", mode="before")
    @classmethod
    def parse_corrections(cls, v: Any) -> list[str]:
        """Semicolon-separated corrections, since polynomial texts contain no ';'."""
        return _split_list(v, ";")

    def spec(self) -> ModelSpec:
        """Validated model specification.

        Raises:
            ConfigurationError: If the parameters are outside the family's ranges.
        """
        try:
            return ModelSpec(
                kind=self.model,
                J=self.J,
                B=self.B,
                lam=self.lam,
                gamma=self.gamma,
                h0=self.h0,
                corrections=self.h,
            )
        except ValidationError as exc:
            raise ConfigurationError(f"Invalid model parameters: {exc}") from exc

    def selector(self) -> StateSelector:
        """Eigenvector selection rule: energy if given, else index (default 0)."""
        if self.energy is not None:
            if self.index is not None:
                raise ConfigurationError("Give at most one of index and energy")
            return StateSelector(index=None, energy=self.energy)
        return StateSelector(index=self.index or 0)

    def resolved_cache_dir(self) -> Path:
        """Cache directory after defaults."""
        return self.cache_dir or self.out / "cache"


# ---------------------------------------------------------------------------
# Loader
# ---------------------------------------------------------------------------


def parse_assignments(items: list[str]) -> dict[str, str]:
    """Turn ``key=value`` tokens into a mapping.

    Raises:
        ConfigurationError: If a token has no ``=`` or an empty key.
    """
    parsed: dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(f"Expected key=value, got '{item}'")
        parsed[key.strip()] = value.strip().strip('"').strip("'")
    return parsed


def read_config_file(config_path: Path) -> dict[str, Any]:
    """Read a YAML file (``.yaml``/``.yml``) or ``key=value`` lines (any other suffix).

    Raises:
        ConfigurationError: If the file is missing or malformed.
    """
    if not config_path.exists():
        raise ConfigurationError(f"Configuration file not found: {config_path}")
    text = config_path.read_text(encoding="utf-8")
    if config_path.suffix.lower() in (".yaml", ".yml"):
        try:
            raw = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"Failed to parse YAML config: {exc}") from exc
        if raw is None:
            return {}
        if not isinstance(raw, dict):
            raise ConfigurationError("Config file must contain a YAML mapping at the top level.")
        return raw
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    return parse_assignments([line for line in lines if line])


def load_config(
    subcommand: str,
    assignments: list[str] | None = None,
    config_path: Path | None = None,
) -> RunConfig:
    """Build a validated run configuration.

    Precedence: CLI assignments > environment > config file > defaults.
    Environment variables:
        SPIN_SEMICLASSICS_CACHE_DIR → cache_dir
        SPIN_SEMICLASSICS_WORKERS   → workers (only when not set elsewhere)

    Args:
        subcommand: Experiment name.
        assignments: ``key=value`` tokens from the command line.
        config_path: Optional config file.

    Returns:
        Validated RunConfig instance.

    Raises:
        ConfigurationError: On unknown keys, bad values or unreadable files.
    """
    raw: dict[str, Any] = read_config_file(config_path) if config_path else {}
    cli = parse_assignments(assignments or [])

    _env_override(raw, "cache_dir", CACHE_DIR_ENV)
    if "workers" not in raw and "workers" not in cli:
        _env_override(raw, "workers", WORKERS_ENV)

    raw.update(cli)
    raw["subcommand"] = subcommand

    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigurationError(f"Configuration validation failed: {exc}") from exc

    if config_path:
        logger.info("Configuration loaded from %s", config_path)
    logger.debug("Subcommand %s, N-grid %s, observables %s", config.subcommand, config.N, config.f)
    return config


def _env_override(section: dict[str, Any], key: str, env_var: str) -> None:
    """Override a config value from an environment variable if set.

    Args:
        section: The config dictionary.
        key: The key to override.
        env_var: The environment variable name.
    """
    value = os.environ.get(env_var)
    if value:
        logger.debug("Overriding config '%s' from env var '%s'", key, env_var)
        section[key] = value
