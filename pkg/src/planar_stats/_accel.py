"""Switch between numba-compiled kernels and plain interpreted numpy code.

Set PLANAR_STATS_NO_NUMBA=1 before import to run every kernel uninterpreted
(slow, but handy for debugging and for the benchmark's baseline column).
"""
import os

NUMBA_DISABLED = os.environ.get("PLANAR_STATS_NO_NUMBA", "") not in ("", "0")

if NUMBA_DISABLED:
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn
else:
    from numba import njit  # noqa: F401

ACCELERATED = not NUMBA_DISABLED
