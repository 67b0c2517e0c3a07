"""Order-preserving parallel map with an explicit worker budget."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> Iterator[R]:
    """``map(fn, items)`` on up to ``threads`` worker processes.

    Results come back in input order, so output does not depend on the worker
    count.  ``fn`` must be picklable (a module-level function or a partial).
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if threads == 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(fn, items)
