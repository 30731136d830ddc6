"""Numba switch.

Set ``RS_DISABLE_JIT=1`` to run every kernel on the pure-Python/numpy
fallback path. Numba being absent has the same effect.
"""
import os

DISABLED = os.environ.get("RS_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes"}

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_ENABLED = numba is not None and not DISABLED


def njit(fn):
    if not JIT_ENABLED:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
