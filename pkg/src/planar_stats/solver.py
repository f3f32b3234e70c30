"""Per-vertex eccentricity, distance sum and distance count via an r-division.

For every piece P with owner set U:

* vertices of P get their distances to U by Dijkstra inside P plus one
  arc per pair of boundary vertices carrying the true distance;
* a vertex v beyond hole i of P reaches U through boundary vertices of
  that hole. Attaching v as an apex to the boundary vertices y whose
  shortest path from v ends inside the hole, with weight d(v, y), turns
  the question into one Voronoi query in G minus the hole's interior.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ._accel import njit
from .division import Division, measure, r_division
from .errors import ValidationError
from .piece_engine import PieceStructure
from .planar_core import EmbeddedGraph, ExactLength, RotationBuilder, embed_subgraph
from .rmq import NEG
from .shortest_paths import (
    DistanceEngine, Potential, dijkstra_reduced, initial_potential, perturb, reversed_graph,
)


@dataclass
class VertexStats:
    ecc: np.ndarray
    sum: np.ndarray
    count: np.ndarray | None = None

    def row(self, v: int) -> tuple:
        out = (int(self.ecc[v]), int(self.sum[v]))
        return out + ((int(self.count[v]),) if self.count is not None else ())


@dataclass
class SolveResult:
    stats: VertexStats
    diameter: int
    wiener: int
    count: int | None
    r: int
    timings: dict = field(default_factory=dict)
    division: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {"diameter": self.diameter, "wiener": self.wiener, "count": self.count,
                "r": self.r, "timings": self.timings, "division": self.division}

    def to_tsv(self) -> str:
        head = "vertex\tecc\tsum" + ("\tcount" if self.stats.count is not None else "")
        rows = [head]
        for v in range(len(self.stats.ecc)):
            rows.append("\t".join(str(x) for x in (v,) + self.stats.row(v)))
        return "\n".join(rows) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


# ---------------------------------------------------------------------------
# triangulation


def triangulate(g: EmbeddedGraph) -> EmbeddedGraph:
    """Clip ears off every face longer than three.

    New edges carry a length no shortest path can afford. An ear whose two
    ends are already adjacent is used only when nothing else is left, so
    parallel edges stay rare.
    """
    if g.num_faces == 0 or max(len(o) for o in g.orbits) <= 3:
        return g
    big = 4 * g.n * max(1, int(np.abs(g.base).max(initial=1))) + 1
    b = RotationBuilder.from_graph(g)
    adjacent = {frozenset(e) for e in b.darts}
    for orbit in g.orbits:
        face = list(orbit)
        while len(face) > 3:
            k = len(face)
            pick = None
            for i in range(k):
                u = b.darts[face[i]][0]
                w = b.darts[face[(i + 1) % k]][1]
                if u != w:
                    if frozenset((u, w)) not in adjacent:
                        pick = i
                        break
                    if pick is None:
                        pick = i
            i = pick
            d1, d2 = face[i], face[(i + 1) % k]
            u, w = b.darts[d1][0], b.darts[d2][1]
            cyc = b.rot[u]
            before = cyc[cyc.index(d1) - 1]
            x = b.add_edge(u, w, before, d2 ^ 1, big, big)
            adjacent.add(frozenset((u, w)))
            if i + 1 < k:
                face[i:i + 2] = [x]
            else:
                face = [x] + face[1:-1]
    return b.build(outer_dart=int(g.orbits[g.outer_face][0]))


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True)
def _last_arcs(n, head, nxt, target):
    """Final dart of each vertex's shortest path to ``target``."""
    last = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for u in range(n):
        if u == target or last[u] >= 0 or nxt[u] < 0:
            continue
        top = 0
        x = u
        while True:
            stack[top] = x
            top += 1
            d = nxt[x]
            h = head[d]
            if h == target:
                val = d
                break
            if last[h] >= 0:
                val = last[h]
                break
            x = h
        for k in range(top):
            last[stack[k]] = val
    return last


@njit(cache=True)
def _apsp_rows(n, off, adj, head, rb, re, pb, sources, umask, delta, with_count):
    """ecc, sum and count over U for each source, by Dijkstra on reduced lengths."""
    k = sources.shape[0]
    ecc = np.full(k, NEG, dtype=np.int64)
    sm = np.zeros(k, dtype=np.int64)
    cnt = np.zeros(k, dtype=np.int64)
    allowed = np.ones(rb.shape[0], dtype=np.bool_)
    for i in range(k):
        s = sources[i]
        db, de, _ = dijkstra_reduced(n, off, adj, head, rb, re, allowed, s, False)
        for u in range(n):
            if not umask[u]:
                continue
            d = db[u] + pb[u] - pb[s]
            sm[i] += d
            if d > ecc[i]:
                ecc[i] = d
            if with_count and d <= delta:
                cnt[i] += 1
    return ecc, sm, cnt


# ---------------------------------------------------------------------------
# per piece


class _Context:
    def __init__(self, g: EmbeddedGraph, potential: Potential, delta: int | None):
        self.g = g
        self.p = potential
        self.engine = DistanceEngine(g, potential)
        self.delta = delta
        n = g.n
        self.ecc = np.full(n, NEG, dtype=np.int64)
        self.sum = np.zeros(n, dtype=np.int64)
        self.count = np.zeros(n, dtype=np.int64)
        self.times = {"within": 0.0, "outside_prep": 0.0, "outside_query": 0.0, "sssp": 0.0}

    def add(self, verts, ecc, sm, cnt):
        np.maximum.at(self.ecc, verts, ecc)
        np.add.at(self.sum, verts, sm)
        if self.delta is not None:
            np.add.at(self.count, verts, cnt)


def within_piece(ctx: _Context, verts: np.ndarray, edges: np.ndarray, boundary: np.ndarray,
                 dist_from: dict, U: np.ndarray):
    """Stats of every piece vertex towards U, computed in the piece plus boundary shortcuts."""
    g = ctx.g
    vloc = {int(v): i for i, v in enumerate(verts.tolist())}
    darts = np.concatenate([2 * edges, 2 * edges + 1])
    tails = [vloc[int(x)] for x in g.tail[darts]]
    heads = [vloc[int(x)] for x in g.head[darts]]
    base = g.base[darts].tolist()
    eps = g.eps[darts].tolist()
    for b1 in boundary.tolist():
        db, de = dist_from[b1]
        for b2 in boundary.tolist():
            if b1 != b2:
                tails.append(vloc[b1])
                heads.append(vloc[b2])
                base.append(int(db[b2]))
                eps.append(int(de[b2]))
    tails = np.array(tails, dtype=np.int64)
    heads = np.array(heads, dtype=np.int64)
    pb, pe = ctx.p.base[verts], ctx.p.eps[verts]
    rb = np.array(base, dtype=np.int64) + pb[tails] - pb[heads]
    re = np.array(eps, dtype=np.int64) + pe[tails] - pe[heads]
    order = np.argsort(tails, kind="stable")
    off = np.zeros(len(verts) + 1, dtype=np.int64)
    np.add.at(off, tails + 1, 1)
    off = np.cumsum(off)
    umask = np.zeros(len(verts), dtype=np.bool_)
    for u in U.tolist():
        umask[vloc[u]] = True
    delta = ctx.delta if ctx.delta is not None else 0
    return _apsp_rows(len(verts), off, order.astype(np.int64), heads, rb, re, pb,
                      np.arange(len(verts), dtype=np.int64), umask, delta, ctx.delta is not None)


def outside_piece(ctx: _Context, piece, U: np.ndarray, dist_to: dict):
    """Stats of every vertex beyond each hole of the piece, towards U.

    Returns a list of (vertices, ecc, sum, count) blocks, one per hole.
    """
    g = ctx.g
    sub = piece.sub
    P = sub.graph
    in_piece = sub.dloc >= 0
    vin = sub.vloc >= 0
    out = []
    flavors = ("sum", "max", "count") if ctx.delta is not None else ("sum", "max")
    for hole in sub.holes:
        t0 = time.perf_counter()
        faces = np.flatnonzero(sub.region == hole)
        face_in = np.zeros(g.num_faces, dtype=bool)
        face_in[faces] = True
        inside = (~in_piece) & face_in[g.face_of]       # darts strictly inside the hole
        verts_inside = np.unique(g.tail[inside])
        A = verts_inside[~vin[verts_inside]]
        if len(A) == 0:
            continue
        X = np.unique(g.tail[inside & vin[g.tail]])
        if not len(U):
            continue
        keep_edges = np.flatnonzero(~inside[0::2])
        gi = embed_subgraph(g, keep_edges.tolist())
        Gi = gi.graph.with_outer_face(int(gi.region[faces[0]]))
        pot = Potential(ctx.p.base[gi.vert], ctx.p.eps[gi.vert])
        p_local = gi.dloc[sub.dart]
        piece_in_gi = embed_subgraph(Gi, (p_local[0::2] >> 1).tolist())
        X_gi = gi.vloc[X]
        U_gi = gi.vloc[U]
        ps = PieceStructure(Gi, piece_in_gi, X_gi.tolist(), U_gi.tolist(), flavors, pot)
        t1 = time.perf_counter()
        # Y_i^v: sites whose shortest path from v ends with a dart inside the hole
        k = len(X)
        member = np.zeros((len(A), k), dtype=bool)
        lam_b = np.zeros((len(A), k), dtype=np.int64)
        lam_e = np.zeros((len(A), k), dtype=np.int64)
        for j, y in enumerate(X.tolist()):
            db, de, last = dist_to[y]
            la = last[A]
            member[:, j] = inside[la]
            lam_b[:, j] = db[A]
            lam_e[:, j] = de[A]
        rows, cols = np.nonzero(member)
        qoff = np.zeros(len(A) + 1, dtype=np.int64)
        qoff[1:] = np.cumsum(member.sum(axis=1))
        Y = cols.astype(np.int64)  # X_gi is listed in the same order as X
        lb, le = lam_b[rows, cols], lam_e[rows, cols]
        sm = ps.run("sum", qoff, Y, lb, le)
        ec = ps.run("max", qoff, Y, lb, le)
        cn = ps.run("count", qoff, Y, lb, le, ctx.delta) if ctx.delta is not None else None
        out.append((A, ec, sm, cn))
        ctx.times["outside_prep"] += t1 - t0
        ctx.times["outside_query"] += time.perf_counter() - t1
    return out


# ---------------------------------------------------------------------------
# driver


def pick_r(n: int, policy: str | int | float | None, counting: bool) -> int:
    if policy is None or policy == "auto":
        expo = 1 / 4 if counting else 1 / 3
        return max(3, math.ceil(n ** expo))
    if policy == "cbrt":
        return max(3, math.ceil(n ** (1 / 3)))
    if policy == "sqrt":
        return max(3, math.ceil(math.sqrt(n)))
    if policy == "n":
        return max(3, n)
    if isinstance(policy, str) and policy.startswith("n^"):
        return max(3, math.ceil(n ** float(policy[2:])))
    try:
        return max(3, int(policy))
    except (TypeError, ValueError):
        raise ValidationError(f"unknown r policy {policy!r}") from None


def solve(g: EmbeddedGraph, delta: ExactLength | int | None = None, r=None, seed: int = 0,
          reverse: bool = False) -> SolveResult:
    """Eccentricity, distance sum and (optionally) distance count of every vertex.

    Distances are measured from each vertex; ``reverse`` measures them towards it.
    Counts compare base lengths against ``delta``.
    """
    times = {}
    t = time.perf_counter()
    if reverse:
        g = reversed_graph(g)
    initial_potential(g)  # raises NegativeCycle before any work
    n = g.n
    if isinstance(delta, ExactLength):
        delta = delta.base
    T = triangulate(g)
    if np.any(T.eps != 0):
        T = T.with_lengths(T.base, np.zeros_like(T.eps))
    T = perturb(T, seed)
    if T.base.min(initial=0) >= 0:
        pot = Potential(np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64))
    else:
        pot = initial_potential(T)
    times["prepare"] = time.perf_counter() - t

    t = time.perf_counter()
    rr = pick_r(n, r, delta is not None)
    div = r_division(T, rr)
    times["division"] = time.perf_counter() - t
    ctx = _Context(T, pot, delta)

    for piece in div.pieces:
        U = div.owned(piece.index)
        if not len(U):
            continue
        t = time.perf_counter()
        dist_from, dist_to = {}, {}
        for y in piece.boundary.tolist():
            db, de, _ = ctx.engine.from_source(y)
            dist_from[y] = (db, de)
            tb, te, nxt = ctx.engine.to_target(y)
            dist_to[y] = (tb, te, _last_arcs(n, T.head, nxt, y))
        ctx.times["sssp"] += time.perf_counter() - t
        t = time.perf_counter()
        ecc, sm, cnt = within_piece(ctx, piece.vertices, piece.edges, piece.boundary, dist_from, U)
        ctx.add(piece.vertices, ecc, sm, cnt)
        ctx.times["within"] += time.perf_counter() - t
        if len(piece.boundary):
            for A, ecc, sm, cnt in outside_piece(ctx, piece, U, dist_to):
                ctx.add(A, ecc, sm, cnt)
    times.update(ctx.times)

    stats = VertexStats(ctx.ecc, ctx.sum, ctx.count if delta is not None else None)
    return SolveResult(
        stats=stats,
        diameter=int(ctx.ecc.max()),
        wiener=int(ctx.sum.sum()),
        count=int(ctx.count.sum()) if delta is not None else None,
        r=rr,
        timings=times,
        division=measure(div, T),
    )
