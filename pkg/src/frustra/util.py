"""Shared helpers: bounded parallel map over independent work items."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    """Worker count: FRUSTRA_THREADS when set, else up to 4 cores."""
    raw = os.environ.get("FRUSTRA_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            n = 1
        return max(1, n)
    return max(1, min(4, os.cpu_count() or 1))


def parallel_map(fn: Callable[[T], R], items: Sequence[T] | Iterable[T]) -> list[R]:
    """Ordered map over items; threads help when fn releases the GIL (LAPACK)."""
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
