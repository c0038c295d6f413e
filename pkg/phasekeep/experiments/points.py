"""Evaluate independent scan points, optionally in parallel."""

from __future__ import annotations

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class PointResult:
    """Observable at one scan point plus the noise drawn for it."""

    mean: float
    stderr: float
    extras: dict[str, float] = field(default_factory=dict)


def map_points(task: Callable[[int], T], count: int, max_workers: int = 1) -> list[T]:
    """Run ``task(index)`` for every point and return results in index order.

    Each task must draw randomness only from its own per-point stream, so the
    result does not depend on scheduling.
    """
    if max_workers <= 1 or count <= 1:
        return [task(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=min(max_workers, count)) as executor:
        results = list(executor.map(task, range(count)))
    logger.debug(f"Evaluated {count} points on {max_workers} workers")
    return results
