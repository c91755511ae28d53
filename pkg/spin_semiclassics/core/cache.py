"""Content-addressed cache for Hamiltonians and spectra."""

from __future__ import annotations

import hashlib
import json
import logging
from collections.abc import Callable
from pathlib import Path
from typing import TypeVar

from spin_semiclassics import __version__
from spin_semiclassics.hamiltonians.registry import create_model
from spin_semiclassics.models.schemas import ModelSpec
from spin_semiclassics.quantization.operators import QuantizedOperator
from spin_semiclassics.spectral.eigen import Spectrum, eigh
from spin_semiclassics.utils.exceptions import SerializationError

logger = logging.getLogger(__name__)

T = TypeVar("T")


class ResultCache:
    """Binary payloads keyed by SHA-256 of ``(model, N, kind, version)``.

    A disabled cache computes every value and stores nothing; results are the
    same either way since payloads hold the exact binary floats.
    """

    def __init__(self, directory: str | Path, enabled: bool = True) -> None:
        """Initialize the cache.

        Args:
            directory: Root directory, created on first write.
            enabled: Whether to read and write entries.
        """
        self.directory = Path(directory)
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(spec: ModelSpec, n_sites: int, kind: str) -> str:
        """Hex digest of the canonical JSON description of an entry."""
        payload = json.dumps(
            {"model": spec.cache_key(), "N": n_sites, "kind": kind, "version": __version__},
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def path(self, key: str) -> Path:
        """File holding an entry."""
        return self.directory / key[:2] / f"{key}.bin"

    def _load(self, key: str, decode: Callable[[bytes], T]) -> T | None:
        """Decoded entry, or None when absent or corrupt (counted as a miss)."""
        if not self.enabled:
            return None
        path = self.path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            value = decode(path.read_bytes())
        except SerializationError:
            logger.warning("Discarding corrupt cache entry %s", path)
            self.misses += 1
            return None
        self.hits += 1
        return value

    def _store(self, key: str, blob: bytes) -> None:
        if not self.enabled:
            return
        path = self.path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(blob)
        tmp.replace(path)

    def hamiltonian(self, spec: ModelSpec, n_sites: int) -> QuantizedOperator:
        """``H_N`` of a model, from the cache when present."""
        key = self.key(spec, n_sites, "hamiltonian")
        cached = self._load(key, QuantizedOperator.from_bytes)
        if cached is not None:
            return cached
        operator = create_model(spec).hamiltonian(n_sites)
        self._store(key, operator.to_bytes())
        return operator

    def spectrum(self, spec: ModelSpec, n_sites: int) -> Spectrum:
        """Spectrum of ``H_N``, from the cache when present."""
        key = self.key(spec, n_sites, "spectrum")
        cached = self._load(key, Spectrum.from_bytes)
        if cached is not None:
            return cached
        spectrum = eigh(self.hamiltonian(spec, n_sites))
        self._store(key, spectrum.to_bytes())
        return spectrum

    def stats(self) -> str:
        """Hit/miss summary for logs."""
        return f"{self.hits} hits, {self.misses} misses"
