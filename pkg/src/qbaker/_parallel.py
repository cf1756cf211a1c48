import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def thread_count() -> int:
    """Worker cap taken from QBAKER_THREADS (default 1)."""
    raw = os.environ.get("QBAKER_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"QBAKER_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def map_chunks(func, n_items: int, chunk: int):
    """Evaluate ``func(start, stop)`` over consecutive chunks and concatenate.

    Chunks are independent and re-assembled in index order, so the result does
    not depend on the number of workers.
    """
    bounds = [(i, min(i + chunk, n_items)) for i in range(0, n_items, chunk)]
    workers = min(thread_count(), len(bounds))
    if workers <= 1:
        parts = [func(a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: func(*ab), bounds))
    return np.concatenate(parts)
