"""Run deeply recursive searches on a thread with a large stack."""

from __future__ import annotations

import sys
import threading
from typing import Callable, TypeVar

R = TypeVar("R")

_STACK_BYTES = 512 * 1024 * 1024
_RECURSION_LIMIT = 1_000_000


def run_deep(fn: Callable[..., R], *args, **kwargs) -> R:
    if getattr(_local, "active", False):
        return fn(*args, **kwargs)
    box: dict = {}

    def target() -> None:
        _local.active = True
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as e:  # re-raised on the calling thread
            box["error"] = e

    _raise_limit()
    try:
        with _lock:
            old_stack = threading.stack_size(_STACK_BYTES)
            try:
                t = threading.Thread(target=target)
                t.start()
            finally:
                threading.stack_size(old_stack)
        t.join()
    finally:
        _restore_limit()
    if "error" in box:
        raise box["error"]
    return box["value"]


_local = threading.local()
_lock = threading.Lock()
# the recursion limit is process-wide: raise it while any deep run is in
# flight and put the old value back when the last one finishes
_users = 0
_saved_limit = 0


def _raise_limit() -> None:
    global _users, _saved_limit
    with _lock:
        if _users == 0:
            _saved_limit = sys.getrecursionlimit()
            sys.setrecursionlimit(max(_saved_limit, _RECURSION_LIMIT))
        _users += 1


def _restore_limit() -> None:
    global _users
    with _lock:
        _users -= 1
        if _users == 0:
            sys.setrecursionlimit(_saved_limit)
