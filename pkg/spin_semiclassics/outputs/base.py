"""Base output adapter interface."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence
from typing import Any

logger = logging.getLogger(__name__)


class BaseOutput(ABC):
    """Abstract base class for output adapters.

    All output adapters must inherit from this class and implement
    ``send``. Curves are optional; adapters that cannot store them log and
    drop them.
    """

    @abstractmethod
    def send(self, records: list[dict[str, Any]], stream_name: str) -> None:
        """Emit a batch of flat records.

        Args:
            records: Rows sharing the same keys.
            stream_name: Table or stream name, e.g. ``limit`` or ``spectrum``.
        """
        ...

    def send_curve(self, name: str, xs: Sequence[float], ys: Sequence[float]) -> None:
        """Emit two-column plot data.

        Args:
            name: Curve name.
            xs: Abscissae.
            ys: Ordinates.
        """
        logger.debug("Dropping curve '%s' (%d points): adapter stores no curves", name, len(xs))

    def send_reports(self, records: list[dict[str, Any]], stream_name: str) -> None:
        """Emit nested report records; flat adapters treat them like rows."""
        self.send(records, stream_name)

    def close(self) -> None:
        """Release resources."""
