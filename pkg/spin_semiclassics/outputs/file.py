"""File output adapter for CSV tables, JSON-lines reports and plot curves."""

from __future__ import annotations

import csv
import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from spin_semiclassics.outputs.base import BaseOutput

logger = logging.getLogger(__name__)

FORMATS = ("csv", "jsonl")


class FileOutput(BaseOutput):
    """Output adapter that writes into an output directory.

    Tables go to ``<out>/<stream>.csv`` or ``<out>/<stream>.jsonl``, curves to
    ``<out>/curves/<name>.dat``. Floats are written with ``repr`` so identical
    runs produce identical bytes.
    """

    def __init__(self, directory: str | Path, file_format: str = "csv") -> None:
        """Initialize the file output adapter.

        Args:
            directory: Output directory, created on first write.
            file_format: ``csv`` or ``jsonl``.
        """
        self.directory = Path(directory)
        self.file_format = file_format.lower()
        if self.file_format not in FORMATS:
            raise ValueError(f"Unsupported file format: '{file_format}'. Use 'csv' or 'jsonl'.")
        self.written: list[Path] = []

    def path_for(self, stream_name: str, file_format: str | None = None) -> Path:
        """Target file of a stream."""
        return self.directory / f"{stream_name}.{file_format or self.file_format}"

    def send(self, records: list[dict[str, Any]], stream_name: str) -> None:
        """Write records to ``<out>/<stream_name>.<format>``.

        Args:
            records: Rows sharing the same keys.
            stream_name: File stem.
        """
        if not records:
            logger.warning("No records for stream '%s' - skipping.", stream_name)
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(stream_name)
        if self.file_format == "jsonl":
            self._write_jsonl(records, path)
        else:
            self._write_csv(records, path)
        self.written.append(path)
        logger.info("Wrote %d records for stream '%s' to %s", len(records), stream_name, path)

    def send_reports(self, records: list[dict[str, Any]], stream_name: str) -> None:
        """Write nested report records as JSON lines regardless of the table format."""
        if not records:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(stream_name, "jsonl")
        self._write_jsonl(records, path)
        self.written.append(path)
        logger.info("Wrote %d report records to %s", len(records), path)

    def send_curve(self, name: str, xs: Sequence[float], ys: Sequence[float]) -> None:
        """Write ``x y`` lines to ``<out>/curves/<name>.dat``."""
        curves = self.directory / "curves"
        curves.mkdir(parents=True, exist_ok=True)
        path = curves / f"{name}.dat"
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for x, y in zip(xs, ys):
                fh.write(f"{_text(x)} {_text(y)}\n")
        self.written.append(path)
        logger.debug("Wrote curve %s (%d points)", path, len(xs))

    @staticmethod
    def _write_jsonl(records: list[dict[str, Any]], path: Path) -> None:
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for record in records:
                fh.write(json.dumps(record, sort_keys=False) + "\n")

    @staticmethod
    def _write_csv(records: list[dict[str, Any]], path: Path) -> None:
        """Header from the first record's keys."""
        fieldnames = list(records[0].keys())
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
            writer.writeheader()
            writer.writerows({k: _text(v) for k, v in row.items()} for row in records)


def _text(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return json.dumps(list(value))
    if value is None:
        return ""
    return str(value)
