"""Doubling sparse table for range maxima over int64 arrays."""
import numpy as np

from ._accel import njit

NEG = np.iinfo(np.int64).min


def build_table(values) -> np.ndarray:
    """Row k holds maxima of windows of length 2**k (rows padded with NEG)."""
    a = np.asarray(values, dtype=np.int64)
    n = len(a)
    levels = max(1, int(n).bit_length())
    table = np.full((levels, max(n, 1)), NEG, dtype=np.int64)
    if n:
        table[0, :n] = a
    for k in range(1, levels):
        half = 1 << (k - 1)
        width = n - (1 << k) + 1
        if width <= 0:
            break
        table[k, :width] = np.maximum(table[k - 1, :width], table[k - 1, half:half + width])
    return table


@njit(cache=True)
def range_max(table, lo, hi):
    """Maximum over the inclusive range [lo, hi]; NEG when the range is empty."""
    if hi < lo:
        return NEG
    span = hi - lo + 1
    k = 0
    while (2 << k) <= span:
        k += 1
    a = table[k, lo]
    b = table[k, hi - (1 << k) + 1]
    return a if a > b else b


@njit(cache=True)
def circular_max(table, n, lo, hi):
    """Maximum over the cyclic range lo, lo+1, ..., hi (indices mod n)."""
    lo %= n
    hi %= n
    if lo <= hi:
        return range_max(table, lo, hi)
    a = range_max(table, lo, n - 1)
    b = range_max(table, 0, hi)
    return a if a > b else b


class SparseTable:
    def __init__(self, values):
        self.n = len(values)
        self.table = build_table(values)

    def query(self, lo: int, hi: int) -> int:
        if lo < 0 or hi >= self.n:
            raise IndexError("range outside the table")
        return int(range_max(self.table, lo, hi))

    def query_circular(self, lo: int, hi: int) -> int:
        return int(circular_max(self.table, self.n, lo, hi))
