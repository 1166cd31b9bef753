"""Worker-count helpers for the thread pools."""

from __future__ import annotations

from typing import Optional

import psutil


def default_workers() -> int:
    """Physical cores, or 1 when psutil cannot tell."""
    return psutil.cpu_count(logical=False) or 1


def resolve_workers(workers: Optional[int]) -> int:
    """0 or None means one worker per physical core."""
    if not workers:
        return default_workers()
    return max(1, int(workers))
