"""Order-preserving parallel map over independent work items, capped by KF_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap() -> int:
    """Worker count from KF_THREADS (default: CPU count); values below 1 mean serial."""
    raw = os.environ.get("KF_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def pmap(fn, items) -> list:
    """``[fn(x) for x in items]``, evaluated by up to ``thread_cap()`` workers; result order is the input order."""
    items = list(items)
    n = min(thread_cap(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
