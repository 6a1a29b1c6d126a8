"""Deterministic chunked fan-out for enumeration loops.

Workers receive contiguous index ranges and return partial tallies; callers
merge with key-wise addition, so results never depend on scheduling. Small
jobs stay in-process regardless of the requested worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

_MIN_PARALLEL_ITEMS = 1 << 14


def resolve_threads(flag: int | None = None) -> int:
    """Worker count: explicit flag wins, then DETLAB_THREADS, then CPU count."""
    if flag is not None and flag >= 1:
        return flag
    env = os.environ.get("DETLAB_THREADS")
    if env:
        try:
            val = int(env)
            if val >= 1:
                return val
        except ValueError:
            pass
    return os.cpu_count() or 1


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    ranges = []
    start = 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def run_chunked(worker, args: tuple, total: int, threads: int) -> list:
    """Run worker(*args, start, stop) over contiguous chunks; partials in chunk order."""
    if total <= 0:
        return []
    if threads <= 1 or total < _MIN_PARALLEL_ITEMS:
        return [worker(*args, 0, total)]
    ranges = split_ranges(total, threads)
    with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
        futures = [pool.submit(worker, *args, start, stop) for start, stop in ranges]
        return [f.result() for f in futures]


def merge_tables(partials: list) -> dict:
    merged: dict = {}
    for part in partials:
        for k, v in part.items():
            merged[k] = merged.get(k, 0) + v
    return merged
