"""Order-preserving process-pool map, capped by IHARA_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("IHARA_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"IHARA_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def pmap(fn, items) -> list:
    """list(map(fn, items)), in a process pool when more than one worker is allowed.

    Results come back in input order, so output is independent of the
    worker count.  ``fn`` must be a module-level function.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
