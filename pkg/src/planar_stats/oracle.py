"""Brute-force all-pairs reference: one Dijkstra per source under a global potential."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .planar_core import EmbeddedGraph
from .shortest_paths import DistanceEngine, dijkstra_reduced, initial_potential


@dataclass
class OracleResult:
    ecc: np.ndarray
    sum: np.ndarray
    count: np.ndarray | None
    matrix: np.ndarray | None = None

    @property
    def diameter(self) -> int:
        return int(self.ecc.max())

    @property
    def wiener(self) -> int:
        return int(self.sum.sum())

    @property
    def total_count(self) -> int | None:
        return None if self.count is None else int(self.count.sum())


@njit(cache=True)
def _rows(n, off, adj, head, rb, re, pb, delta, keep):
    ecc = np.empty(n, dtype=np.int64)
    sm = np.zeros(n, dtype=np.int64)
    cnt = np.zeros(n, dtype=np.int64)
    mat = np.zeros((n if keep else 0, n), dtype=np.int64)
    allowed = np.ones(rb.shape[0], dtype=np.bool_)
    for s in range(n):
        db, _, _ = dijkstra_reduced(n, off, adj, head, rb, re, allowed, s, False)
        best = db[s] + pb[s] - pb[s]
        for u in range(n):
            d = db[u] + pb[u] - pb[s]
            if keep:
                mat[s, u] = d
            sm[s] += d
            if d > best:
                best = d
            if d <= delta:
                cnt[s] += 1
        ecc[s] = best
    return ecc, sm, cnt, mat


def apsp_oracle(g: EmbeddedGraph, delta: int | None = None, keep_matrix: bool = False) -> OracleResult:
    """Exact per-vertex eccentricity, distance sum and count (base lengths)."""
    eng = DistanceEngine(g, initial_potential(g))
    d = 0 if delta is None else int(getattr(delta, "base", delta))
    ecc, sm, cnt, mat = _rows(g.n, eng.off, eng.adj, g.head, eng.rb, eng.re, eng.p.base, d,
                              keep_matrix)
    return OracleResult(ecc, sm, cnt if delta is not None else None, mat if keep_matrix else None)


def distance_matrix(g: EmbeddedGraph) -> np.ndarray:
    return apsp_oracle(g, keep_matrix=True).matrix
