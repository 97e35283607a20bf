"""Deterministic parallel map.

Results are returned in input order no matter how many workers run, so
every downstream output is byte-identical across worker counts.  Falls
back to serial execution when process pools are unavailable.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
U = TypeVar("U")


def pmap(fn: Callable[[T], U], items: Iterable[T], workers: int = 1) -> list[U]:
    seq: Sequence[T] = list(items)
    if workers <= 1 or len(seq) < 4:
        return [fn(x) for x in seq]
    chunk = max(1, len(seq) // (workers * 8))
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, seq, chunksize=chunk))
    except (OSError, PermissionError):  # pragma: no cover - sandbox dependent
        return [fn(x) for x in seq]
