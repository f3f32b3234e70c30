"""Exact shortest paths with negative lengths: Bellman-Ford once, then
Dijkstra on reduced lengths. Lengths are (base, eps) pairs compared
lexicographically throughout."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .errors import AlreadyPerturbed, NegativeCycle
from .planar_core import ExactLength, EmbeddedGraph

__all__ = [
    "UNREACHED", "EPS_RANGE", "Potential", "ShortestPathTree", "initial_potential",
    "reduced_lengths", "dijkstra_reduced", "DistanceEngine", "sssp", "perturb", "reversed_graph",
]

UNREACHED = np.iinfo(np.int64).max
EPS_RANGE = 1 << 40


@dataclass(frozen=True)
class Potential:
    base: np.ndarray
    eps: np.ndarray

    def __call__(self, v: int) -> ExactLength:
        return ExactLength(int(self.base[v]), int(self.eps[v]))


@dataclass(frozen=True)
class ShortestPathTree:
    root: int
    parent_dart: np.ndarray
    dist_base: np.ndarray
    dist_eps: np.ndarray

    def dist(self, v: int) -> ExactLength:
        return ExactLength(int(self.dist_base[v]), int(self.dist_eps[v]))


@njit(cache=True)
def _bellman_ford(n, tail, head, base, eps, source):
    db = np.full(n, UNREACHED, dtype=np.int64)
    de = np.zeros(n, dtype=np.int64)
    db[source] = 0
    m2 = tail.shape[0]
    for rnd in range(n + 1):
        changed = False
        for d in range(m2):
            u = tail[d]
            if db[u] == UNREACHED:
                continue
            v = head[d]
            cb = db[u] + base[d]
            ce = de[u] + eps[d]
            if db[v] == UNREACHED or cb < db[v] or (cb == db[v] and ce < de[v]):
                db[v] = cb
                de[v] = ce
                changed = True
        if not changed:
            return db, de, True
    return db, de, False


def initial_potential(g: EmbeddedGraph, source: int = 0) -> Potential:
    """phi(v) = d(source, v) by Bellman-Ford; raises NegativeCycle."""
    db, de, ok = _bellman_ford(g.n, g.tail, g.head, g.base, g.eps, source)
    if not ok:
        raise NegativeCycle("a negative cycle is reachable; distances are undefined")
    return Potential(db, de)


def reduced_lengths(g: EmbeddedGraph, p: Potential):
    rb = g.base + p.base[g.tail] - p.base[g.head]
    re = g.eps + p.eps[g.tail] - p.eps[g.head]
    return rb, re


@njit(cache=True)
def _heap_push(hb, he, hv, size, kb, ke, v):
    i = size
    hb[i] = kb
    he[i] = ke
    hv[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if hb[p] < hb[i] or (hb[p] == hb[i] and he[p] <= he[i]):
            break
        hb[p], hb[i] = hb[i], hb[p]
        he[p], he[i] = he[i], he[p]
        hv[p], hv[i] = hv[i], hv[p]
        i = p
    return size + 1


@njit(cache=True)
def _heap_pop(hb, he, hv, size):
    kb, ke, v = hb[0], he[0], hv[0]
    size -= 1
    hb[0], he[0], hv[0] = hb[size], he[size], hv[size]
    i = 0
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and (hb[c + 1] < hb[c] or (hb[c + 1] == hb[c] and he[c + 1] < he[c])):
            c += 1
        if hb[i] < hb[c] or (hb[i] == hb[c] and he[i] <= he[c]):
            break
        hb[c], hb[i] = hb[i], hb[c]
        he[c], he[i] = he[i], he[c]
        hv[c], hv[i] = hv[i], hv[c]
        i = c
    return kb, ke, v, size


@njit(cache=True)
def dijkstra_reduced(n, off, adj, head, rb, re, allowed, source, backwards):
    """Dijkstra over nonnegative reduced lengths.

    Forward: distances from ``source`` and the dart entering each vertex.
    Backwards: distances to ``source`` and the first dart of each path.
    Darts with ``allowed[d] == False`` are ignored.
    """
    db = np.full(n, UNREACHED, dtype=np.int64)
    de = np.zeros(n, dtype=np.int64)
    par = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    cap = adj.shape[0] + 2
    hb = np.empty(cap, dtype=np.int64)
    he = np.empty(cap, dtype=np.int64)
    hv = np.empty(cap, dtype=np.int64)
    db[source] = 0
    size = _heap_push(hb, he, hv, 0, 0, 0, source)
    while size > 0:
        kb, ke, u, size = _heap_pop(hb, he, hv, size)
        if done[u] or kb != db[u] or ke != de[u]:
            continue
        done[u] = True
        for k in range(off[u], off[u + 1]):
            x = adj[k]
            e = x ^ 1 if backwards else x
            if not allowed[e]:
                continue
            v = head[x]
            if done[v]:
                continue
            cb = kb + rb[e]
            ce = ke + re[e]
            if db[v] == UNREACHED or cb < db[v] or (cb == db[v] and ce < de[v]):
                db[v] = cb
                de[v] = ce
                par[v] = e
                size = _heap_push(hb, he, hv, size, cb, ce, v)
    return db, de, par


class DistanceEngine:
    """Cached CSR adjacency and reduced lengths for repeated SSSP runs."""

    def __init__(self, g: EmbeddedGraph, p: Potential | None = None):
        self.g = g
        self.p = p if p is not None else initial_potential(g)
        self.off = np.zeros(g.n + 1, dtype=np.int64)
        self.off[1:] = np.cumsum([len(c) for c in g.rotation])
        self.adj = np.fromiter((d for c in g.rotation for d in c), dtype=np.int64,
                               count=g.num_darts)
        self.rb, self.re = reduced_lengths(g, self.p)
        if g.num_darts and (self.rb.min() < 0 or ((self.rb == 0) & (self.re < 0)).any()):
            raise ValueError("potential is not feasible for these lengths")
        self.all_darts = np.ones(g.num_darts, dtype=np.bool_)

    def from_source(self, s: int, allowed=None):
        """True distances from s (UNREACHED base where unreachable) and parent darts."""
        mask = self.all_darts if allowed is None else allowed
        db, de, par = dijkstra_reduced(self.g.n, self.off, self.adj, self.g.head,
                                       self.rb, self.re, mask, s, False)
        reach = db != UNREACHED
        db[reach] += self.p.base[reach] - self.p.base[s]
        de[reach] += self.p.eps[reach] - self.p.eps[s]
        return db, de, par

    def to_target(self, t: int, allowed=None):
        """True distances to t and, per vertex, the first dart of its path."""
        mask = self.all_darts if allowed is None else allowed
        db, de, nxt = dijkstra_reduced(self.g.n, self.off, self.adj, self.g.head,
                                       self.rb, self.re, mask, t, True)
        reach = db != UNREACHED
        db[reach] += self.p.base[t] - self.p.base[reach]
        de[reach] += self.p.eps[t] - self.p.eps[reach]
        return db, de, nxt


def sssp(g: EmbeddedGraph, p: Potential, source: int) -> ShortestPathTree:
    db, de, par = DistanceEngine(g, p).from_source(source)
    return ShortestPathTree(source, par, db, de)


def perturb(g: EmbeddedGraph, seed: int) -> EmbeddedGraph:
    """Draw every dart's infinitesimal coefficient uniformly from [1, 2^40]."""
    if np.any(g.eps != 0):
        raise AlreadyPerturbed("lengths already carry infinitesimal parts")
    rng = np.random.default_rng(seed)
    eps = rng.integers(1, EPS_RANGE + 1, size=g.num_darts, dtype=np.int64)
    return g.with_lengths(g.base, eps)


def reversed_graph(g: EmbeddedGraph) -> EmbeddedGraph:
    """Same embedding with each dart carrying the length of its reversal."""
    idx = np.arange(g.num_darts) ^ 1
    return g.with_lengths(g.base[idx], g.eps[idx])


# the operation is called ``reversed`` in the module API; keep both names
reversed = reversed_graph  # noqa: A001
