"""Deterministic worker pool for independent (model, N) jobs."""

from __future__ import annotations

import concurrent.futures
import logging
import os
from collections.abc import Callable, Sequence
from typing import TypeVar

logger = logging.getLogger(__name__)

JobT = TypeVar("JobT")
ResultT = TypeVar("ResultT")


def default_workers() -> int:
    """Available parallelism."""
    return os.cpu_count() or 1


def map_jobs(fn: Callable[[JobT], ResultT], jobs: Sequence[JobT], workers: int | None = None) -> list[ResultT]:
    """Run ``fn`` over ``jobs`` and return results in job order.

    With one worker (or a single job) everything runs inline. Otherwise jobs go
    to a process pool; ``fn`` must be a picklable module-level function. Each
    job does its own floating-point reductions, so the merge order cannot
    change results.

    Args:
        fn: Job function.
        jobs: Job arguments.
        workers: Pool size; defaults to :func:`default_workers`.

    Returns:
        ``[fn(job) for job in jobs]``.
    """
    n_workers = min(workers or default_workers(), len(jobs))
    if n_workers <= 1:
        return [fn(job) for job in jobs]
    results: list[ResultT | None] = [None] * len(jobs)
    logger.debug("Dispatching %d jobs to %d workers", len(jobs), n_workers)
    with concurrent.futures.ProcessPoolExecutor(max_workers=n_workers) as pool:
        futures = {pool.submit(fn, job): i for i, job in enumerate(jobs)}
        for future in concurrent.futures.as_completed(futures):
            i = futures[future]
            try:
                results[i] = future.result()
            except Exception:
                logger.error("Job %d (%r) failed", i, jobs[i])
                raise
    return results  # type: ignore[return-value]
