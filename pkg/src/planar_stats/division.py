"""r-divisions by recursive BFS-level separators.

A piece that is too big, has too many boundary vertices or too many holes
is cut along one BFS level. The level is picked among the balanced ones
to be as short as possible. Each side is then split into connected
components, and the pieces are checked again.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import NotTriangulated
from .planar_core import EmbeddedGraph, SubEmbedding, embed_subgraph


@dataclass(frozen=True)
class Limits:
    """Contract constants: pieces <= c1 n/r, |V| <= c2 r, boundary <= c3 sqrt(r), holes <= c4."""
    c1: float = 8.0
    c2: float = 1.0
    c3: float = 4.0
    c4: int = 12


@dataclass(eq=False)
class Piece:
    index: int
    edges: np.ndarray
    vertices: np.ndarray
    boundary: np.ndarray
    hole_count: int
    parent: EmbeddedGraph = field(repr=False)

    @cached_property
    def sub(self) -> SubEmbedding:
        return embed_subgraph(self.parent, self.edges.tolist())

    @property
    def holes(self) -> tuple:
        return self.sub.holes


@dataclass
class Division:
    pieces: list
    owner: np.ndarray
    r: int
    limits: Limits

    def owned(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.owner == j)


class _Scratch:
    """Reusable per-graph buffers so each piece costs time in its own size."""

    def __init__(self, g: EmbeddedGraph):
        self.g = g
        self.in_piece = np.zeros(g.num_darts, dtype=bool)
        self.deg = np.array([len(r) for r in g.rotation], dtype=np.int64)
        self.tail = g.tail.tolist()
        self.head = g.head.tolist()
        self.rot_next = g.rot_next.tolist()

    def stats(self, edges: np.ndarray):
        g = self.g
        darts = np.concatenate([2 * edges, 2 * edges + 1])
        self.in_piece[darts] = True
        verts, pdeg = np.unique(g.tail[darts], return_counts=True)
        boundary = verts[pdeg != self.deg[verts]]
        holes = self._holes(darts.tolist()) if len(boundary) else 0
        self.in_piece[darts] = False
        return verts, boundary, holes

    def _holes(self, darts) -> int:
        inp, nxt = self.in_piece, self.rot_next
        seen = set()
        holes = 0
        for d0 in darts:
            if d0 in seen:
                continue
            foreign = False
            d = d0
            while d not in seen:
                seen.add(d)
                x = nxt[d ^ 1]
                if not inp[x]:
                    foreign = True
                    while not inp[x]:
                        x = nxt[x]
                d = x
            holes += foreign
        return holes


def is_triangulated(g: EmbeddedGraph) -> bool:
    return g.num_faces > 0 and max(len(o) for o in g.orbits) <= 3


def _components(g: EmbeddedGraph, edges: np.ndarray) -> list:
    adj: dict = {}
    for e in edges.tolist():
        u, v = int(g.tail[2 * e]), int(g.head[2 * e])
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    seen = set()
    out = []
    for s in adj:
        if s in seen:
            continue
        seen.add(s)
        comp = set()
        stack = [s]
        while stack:
            u = stack.pop()
            for v, e in adj[u]:
                comp.add(e)
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        out.append(np.array(sorted(comp), dtype=np.int64))
    return out


def _bfs_levels(adj: dict, s: int) -> dict:
    level = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in level:
                level[v] = level[u] + 1
                q.append(v)
    return level


def _cut(g: EmbeddedGraph, edges: np.ndarray, weight: dict) -> list:
    """Two edge sets split along the shortest balanced BFS level."""
    adj: dict = {}
    for e in edges.tolist():
        u, v = int(g.tail[2 * e]), int(g.head[2 * e])
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    # double sweep: start from a vertex far from an arbitrary one
    first = _bfs_levels(adj, next(iter(adj)))
    far = max(first, key=first.get)
    level = _bfs_levels(adj, far)
    depth = max(level.values())
    size = np.zeros(depth + 1, dtype=np.int64)
    wsum = np.zeros(depth + 1, dtype=np.float64)
    for v, l in level.items():
        size[l] += 1
        wsum[l] += weight.get(v, 0.0)
    total = wsum.sum()
    below = np.concatenate([[0.0], np.cumsum(wsum)])  # below[l] = weight at levels < l
    best = None
    for l in range(1, depth + 1):
        frac = below[l] / total if total else 0.5
        balanced = 1 / 3 <= frac <= 2 / 3
        key = (not balanced, size[l] if balanced else abs(frac - 0.5))
        if best is None or key < best[0]:
            best = (key, l)
    if best is not None:
        cut = best[1]
        lt = np.array([min(level[int(g.tail[2 * e])], level[int(g.head[2 * e])]) for e in edges])
        a, b = edges[lt < cut], edges[lt >= cut]
        if len(a) and len(b):
            return [a, b]
    half = len(edges) // 2
    return [edges[:half], edges[half:]]


def _fits(stats, r: int, limits: Limits) -> bool:
    verts, boundary, holes = stats
    return len(verts) <= limits.c2 * r and len(boundary) <= limits.c3 * math.sqrt(r) \
        and holes <= limits.c4


def _merge_small(g: EmbeddedGraph, scratch: "_Scratch", done: list, r: int, limits: Limits) -> list:
    """Fold small pieces into a neighbour sharing a vertex while the union still fits.

    Cuts around high-degree vertices leave slivers of one or two edges; without
    this pass they inflate the piece count well past c1 n / r.
    """
    alive = dict(enumerate(done))
    touching: dict = {}
    for j, (_, verts, _, _) in alive.items():
        for v in verts.tolist():
            touching.setdefault(v, set()).add(j)
    for j in sorted(alive, key=lambda k: len(alive[k][0])):
        if j not in alive or len(alive[j][1]) * 2 > limits.c2 * r:
            continue
        edges, verts = alive[j][0], alive[j][1]
        near = {k for v in verts.tolist() for k in touching[v]} - {j}
        for k in sorted(near, key=lambda k: len(alive[k][0])):
            union = np.concatenate([alive[k][0], edges])
            stats = scratch.stats(union)
            if not _fits(stats, r, limits):
                continue
            alive[k] = (union,) + stats
            del alive[j]
            for v in verts.tolist():
                touching[v].discard(j)
                touching[v].add(k)
            break
    return list(alive.values())


def r_division(g: EmbeddedGraph, r: int, limits: Limits = Limits()) -> Division:
    if not is_triangulated(g):
        raise NotTriangulated("r_division needs a triangulated graph")
    r = max(int(r), 3)
    scratch = _Scratch(g)
    max_b = limits.c3 * math.sqrt(r)
    done = []
    stack = [np.arange(g.num_edges, dtype=np.int64)]
    while stack:
        edges = stack.pop()
        verts, boundary, holes = scratch.stats(edges)
        if len(edges) <= 1:
            done.append((edges, verts, boundary, holes))
            continue
        if len(verts) > limits.c2 * r:
            weight = {int(v): 1.0 for v in verts}
        elif len(boundary) > max_b or holes > limits.c4:
            weight = {int(v): 1.0 for v in boundary}
        else:
            done.append((edges, verts, boundary, holes))
            continue
        for side in _cut(g, edges, weight):
            stack.extend(_components(g, side))
    done = _merge_small(g, scratch, done, r, limits)
    done = [(np.sort(e), *rest) for e, *rest in done]
    done.sort(key=lambda t: int(t[0][0]))
    pieces = [Piece(j, e, v, bd, h, g) for j, (e, v, bd, h) in enumerate(done)]
    div = Division(pieces, np.zeros(0, dtype=np.int64), r, limits)
    div.owner = assign_owners(div, g.n)
    return div


def assign_owners(d: Division, n: int | None = None) -> np.ndarray:
    """Lowest-index piece containing each vertex."""
    if n is None:
        n = 1 + max(int(p.vertices.max()) for p in d.pieces)
    owner = np.full(n, -1, dtype=np.int64)
    for p in reversed(d.pieces):
        owner[p.vertices] = p.index
    return owner


def measure(d: Division, g: EmbeddedGraph) -> dict:
    """Observed contract constants of a division."""
    n, r = g.n, d.r
    return {
        "pieces": len(d.pieces),
        "c1": len(d.pieces) * r / n,
        "c2": max(len(p.vertices) for p in d.pieces) / r,
        "c3": max(len(p.boundary) for p in d.pieces) / math.sqrt(r),
        "c4": max(p.hole_count for p in d.pieces),
    }


def check_contract(d: Division, g: EmbeddedGraph) -> list:
    """Violated contract bullets, empty when the division is valid."""
    bad = []
    m = measure(d, g)
    lim = d.limits
    # the bounds are asymptotic; a graph smaller than r is always one piece
    if m["c1"] > lim.c1 and len(d.pieces) > 1:
        bad.append(f"too many pieces: {m['pieces']}")
    if m["c2"] > lim.c2:
        bad.append(f"piece too large: c2={m['c2']:.2f}")
    if m["c3"] > lim.c3:
        bad.append(f"too many boundary vertices: c3={m['c3']:.2f}")
    if m["c4"] > lim.c4:
        bad.append(f"too many holes: {m['c4']}")
    covered = np.zeros(g.num_edges, dtype=bool)
    for p in d.pieces:
        covered[p.edges] = True
    if not covered.all():
        bad.append("an edge belongs to no piece")
    if (d.owner < 0).any():
        bad.append("a vertex has no owner")
    for p in d.pieces:
        if len(_components(g, p.edges)) != 1:
            bad.append(f"piece {p.index} is disconnected")
    return bad


def dump(d: Division) -> str:
    return json.dumps({
        "r": d.r,
        "pieces": [{"edges": p.edges.tolist(), "boundary": p.boundary.tolist(),
                    "holes": p.hole_count} for p in d.pieces],
        "owner": d.owner.tolist(),
    })
