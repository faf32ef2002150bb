"""Order-preserving map honouring the CREPANT_THREADS worker cap."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CREPANT_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items) -> list:
    """``list(map(fn, items))``, fanned out over processes when CREPANT_THREADS > 1.

    ``fn`` must be a module-level function when running in parallel.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
