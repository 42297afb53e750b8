"""
Bounded thread parallelism for grid sweeps.

The cap comes from HB_THREADS (default 1, i.e. sequential).
"""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar('T')
R = TypeVar('R')


def thread_count(threads: Optional[int] = None) -> int:
    """Explicit count, else HB_THREADS, else 1."""
    if threads is None:
        threads = int(os.getenv("HB_THREADS", "1"))
    return max(1, threads)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """Order-preserving map, threaded when more than one worker is allowed."""
    items = list(items)
    workers = min(thread_count(threads), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
