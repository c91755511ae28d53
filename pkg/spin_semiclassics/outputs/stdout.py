"""Stdout output adapter for previews and piping."""

from __future__ import annotations

import json
import logging
from typing import Any

from spin_semiclassics.outputs.base import BaseOutput

logger = logging.getLogger(__name__)


class StdoutOutput(BaseOutput):
    """Output adapter that prints records to stdout as JSON lines."""

    def __init__(self, pretty: bool = False) -> None:
        """Initialize the stdout output adapter.

        Args:
            pretty: Indent each record instead of one record per line.
        """
        self.pretty = pretty

    def send(self, records: list[dict[str, Any]], stream_name: str) -> None:
        """Print records to stdout.

        Args:
            records: Rows to print.
            stream_name: Stream name (logged only).
        """
        logger.info("Writing %d records for stream '%s' to stdout", len(records), stream_name)
        indent = 2 if self.pretty else None
        for record in records:
            print(json.dumps(record, indent=indent))
