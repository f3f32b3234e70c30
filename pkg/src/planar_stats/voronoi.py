"""Additively weighted Voronoi diagrams of sites on the outer face of a piece.

Geometry is purely combinatorial. A bisector is the clockwise dual walk
around the vertices closer to its first site. Its arcs are ordered by their
position on the Euler tour of that site's shortest-path tree, taken in the
graph that contains the piece. This gives the correct cyclic order even when
the walk threads through holes of the piece. Every walk is rotated to start
with the arc that leaves the outer face.

For three sites the part of bis(s, t) that survives against q is a prefix
or a suffix of that walk. The Voronoi edge between s and t in a larger
diagram is therefore one contiguous range, and the diagram is a set of
ranges into precomputed bisector families.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._accel import njit
from .aggregation import euler_tour
from .errors import EmptyCell, InvalidSitePair, TieDetected, XNotOnOuterFace
from .planar_core import DualWalk, EmbeddedGraph, ExactLength, SubEmbedding, enclosed_vertices
from .shortest_paths import DistanceEngine, Potential


@dataclass(frozen=True)
class Site:
    vertex: int
    weight: ExactLength = ExactLength(0)


@dataclass(frozen=True)
class Bisector:
    walk: DualWalk
    left_site: int
    right_site: int


@njit(cache=True)
def _less(ab, ae, bb, be):
    return ab < bb or (ab == bb and ae < be)


@njit(cache=True)
def _count_below(tb, te, lo, hi, wb, we):
    """Number of thresholds in tb/te[lo:hi] strictly below (wb, we)."""
    a, b = lo, hi
    while a < b:
        m = (a + b) >> 1
        if _less(tb[m], te[m], wb, we):
            a = m + 1
        else:
            b = m
    return a - lo


@njit(cache=True)
def _beats(Db, De, s, q, x, lsb, lse, lqb, lqe):
    return _less(lsb + Db[s, x], lse + De[s, x], lqb + Db[q, x], lqe + De[q, x])


@njit(cache=True)
def surviving_range(arc_tail, arc_head, a0, a1, Db, De, s, t, q,
                    lsb, lse, ltb, lte, lqb, lqe):
    """Arcs of the s/t bisector (flat a0..a1-1) whose ends beat site q.

    Returns an inclusive (lo, hi) pair relative to a0; lo > hi means none.
    """
    L = a1 - a0
    if L == 0:
        return 1, 0
    first = (_beats(Db, De, s, q, arc_tail[a0], lsb, lse, lqb, lqe)
             and _beats(Db, De, t, q, arc_head[a0], ltb, lte, lqb, lqe))
    j = a1 - 1
    last = (_beats(Db, De, s, q, arc_tail[j], lsb, lse, lqb, lqe)
            and _beats(Db, De, t, q, arc_head[j], ltb, lte, lqb, lqe))
    if first and last:
        return 0, L - 1
    if not first and not last:
        return 1, 0
    lo, hi = 0, L - 1  # pred(lo) != pred(hi); find the switch
    while hi - lo > 1:
        m = (lo + hi) >> 1
        pm = (_beats(Db, De, s, q, arc_tail[a0 + m], lsb, lse, lqb, lqe)
              and _beats(Db, De, t, q, arc_head[a0 + m], ltb, lte, lqb, lqe))
        if pm == first:
            lo = m
        else:
            hi = m
    if first:
        return 0, lo
    return hi, L - 1


@njit(cache=True)
def avd_ranges(Y, lb, le, b, Db, De, thr_off, thr_b, thr_e, walk_base,
               arc_off, arc_tail, arc_head):
    """Voronoi edges of the sites Y (indices into the site list) with weights lb/le.

    For every ordered pair (Y[i], Y[j]) returns the walk id in the family of
    that pair and the inclusive arc range of their common edge.
    """
    k = Y.shape[0]
    wid = np.full((k, k), -1, dtype=np.int64)
    lo = np.ones((k, k), dtype=np.int64)
    hi = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        s = Y[i]
        for j in range(k):
            if i == j:
                continue
            t = Y[j]
            p = s * b + t
            gap = _count_below(thr_b, thr_e, thr_off[p], thr_off[p + 1],
                               lb[j] - lb[i], le[j] - le[i])
            w = walk_base[p] + gap
            wid[i, j] = w
            a0, a1 = arc_off[w], arc_off[w + 1]
            cl, ch = 0, a1 - a0 - 1
            for r in range(k):
                if r == i or r == j or cl > ch:
                    continue
                rl, rh = surviving_range(arc_tail, arc_head, a0, a1, Db, De, s, t, Y[r],
                                         lb[i], le[i], lb[j], le[j], lb[r], le[r])
                if rl > cl:
                    cl = rl
                if rh < ch:
                    ch = rh
            lo[i, j] = cl
            hi[i, j] = ch
    return wid, lo, hi


def _lexsort_unique(b, e):
    order = np.lexsort((e, b))
    sb, se = b[order], e[order]
    new = np.ones(len(order), dtype=bool)
    new[1:] = (sb[1:] != sb[:-1]) | (se[1:] != se[:-1])
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.cumsum(new) - 1
    return sb[new], se[new], rank


class VoronoiPrep:
    """Distances, trees and every pairwise bisector family for a site list.

    ``g`` is the graph in which distances are measured. ``sub`` embeds the
    piece in ``g`` (None when the piece is ``g`` itself). ``X`` lists
    vertices of ``g`` that lie on the outer face of the piece.
    """

    def __init__(self, g: EmbeddedGraph, sub: SubEmbedding | None, X, potential: Potential | None = None,
                 engine: DistanceEngine | None = None):
        self.g = g
        self.sub = sub
        self.P = sub.graph if sub is not None else g
        self.vert = sub.vert if sub is not None else np.arange(g.n)
        self.vloc = sub.vloc if sub is not None else np.arange(g.n)
        self.pdart = sub.dart if sub is not None else np.arange(g.num_darts)
        self.X = [int(x) for x in X]
        self.ainf = int(self.P.outer_face)
        on_outer = set(self.P.tail[self.P.orbits[self.ainf]].tolist()) if self.P.num_darts else {0}
        for x in self.X:
            if self.vloc[x] < 0 or int(self.vloc[x]) not in on_outer:
                raise XNotOnOuterFace(f"vertex {x} is not on the outer face of the piece")
        self.index = {x: i for i, x in enumerate(self.X)}
        b = len(self.X)
        self.b = b
        eng = engine if engine is not None else DistanceEngine(g, potential)
        self.engine = eng
        npv = self.P.n
        self.Db = np.empty((b, npv), dtype=np.int64)
        self.De = np.empty((b, npv), dtype=np.int64)
        self.parent = np.empty((b, g.n), dtype=np.int64)
        self.tpos = np.empty((b, self.P.num_darts), dtype=np.int64)
        off = eng.off
        adj = eng.adj
        for i, x in enumerate(self.X):
            db, de, par = eng.from_source(x)
            self.Db[i], self.De[i] = db[self.vert], de[self.vert]
            self.parent[i] = par
            pos, _, _ = euler_tour(g.n, off, adj, g.head, g.rot_next, par, x)
            self.tpos[i] = pos[self.pdart]
        self._build_families()

    # -- families ----------------------------------------------------------
    def _build_families(self):
        b, P = self.b, self.P
        tail, head = P.tail, P.head
        outer = P.face_of == self.ainf
        thr_b, thr_e, thr_off = [], [], [0]
        walks = []
        walk_base = np.zeros(b * b + 1, dtype=np.int64)
        for i in range(b):
            by_tour = np.argsort(self.tpos[i], kind="stable")
            for j in range(b):
                p = i * b + j
                walk_base[p] = len(walks)
                if i == j:
                    thr_off.append(thr_off[-1])
                    walks.append(np.zeros(0, dtype=np.int64))
                    continue
                tb, te, rank = _lexsort_unique(self.Db[i] - self.Db[j], self.De[i] - self.De[j])
                thr_b.append(tb)
                thr_e.append(te)
                thr_off.append(thr_off[-1] + len(tb))
                rt = rank[tail[by_tour]]
                rh = rank[head[by_tour]]
                gaps = np.arange(len(tb) + 1)[:, None]
                member = (rt[None, :] < gaps) & (gaps <= rh[None, :])
                for gidx in range(len(tb) + 1):
                    arcs = by_tour[member[gidx]]
                    if len(arcs):
                        start = np.flatnonzero(outer[arcs])
                        if len(start) != 1:
                            raise AssertionError("bisector does not pass the outer face exactly once")
                        arcs = np.roll(arcs, -int(start[0]))
                    walks.append(arcs)
        walk_base[b * b] = len(walks)
        self.thr_off = np.array(thr_off, dtype=np.int64)
        self.thr_b = np.concatenate(thr_b) if thr_b else np.zeros(0, dtype=np.int64)
        self.thr_e = np.concatenate(thr_e) if thr_e else np.zeros(0, dtype=np.int64)
        self.walk_base = walk_base
        self.arc_off = np.zeros(len(walks) + 1, dtype=np.int64)
        self.arc_off[1:] = np.cumsum([len(w) for w in walks])
        self.arcs = np.concatenate(walks) if walks else np.zeros(0, dtype=np.int64)
        self.arc_tail = tail[self.arcs]
        self.arc_head = head[self.arcs]

    def walk(self, w: int) -> np.ndarray:
        return self.arcs[self.arc_off[w]:self.arc_off[w + 1]]

    def pair_walks(self, i: int, j: int) -> range:
        p = i * self.b + j
        return range(int(self.walk_base[p]), int(self.walk_base[p + 1]))

    def thresholds(self, i: int, j: int):
        p = i * self.b + j
        sl = slice(int(self.thr_off[p]), int(self.thr_off[p + 1]))
        return self.thr_b[sl], self.thr_e[sl]

    def gap(self, i: int, j: int, w: ExactLength) -> int:
        p = i * self.b + j
        return int(_count_below(self.thr_b, self.thr_e, self.thr_off[p], self.thr_off[p + 1],
                                w.base, w.eps))

    def dist(self, i: int, v_local: int) -> ExactLength:
        return ExactLength(int(self.Db[i, v_local]), int(self.De[i, v_local]))

    def site_index(self, s: Site) -> int:
        try:
            return self.index[s.vertex]
        except KeyError:
            raise XNotOnOuterFace(f"site vertex {s.vertex} was not preprocessed") from None


# ---------------------------------------------------------------------------
# slow reference


def graphic_cells(piece: EmbeddedGraph, dists, sites) -> np.ndarray:
    """Owner site of every piece vertex by direct minimisation.

    ``dists[k]`` is a pair of arrays (base, eps) over piece vertices.
    """
    k = len(sites)
    n = piece.n
    owner = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        vals = [(sites[i].weight.base + int(dists[i][0][v]), sites[i].weight.eps + int(dists[i][1][v]))
                for i in range(k)]
        best = min(vals)
        if vals.count(best) > 1:
            raise TieDetected(f"vertex {v} is equidistant from two sites")
        owner[v] = vals.index(best)
    for i in range(k):
        if not (owner == i).any():
            raise EmptyCell(f"site {i} owns no vertex")
    return owner


def prep_cells(prep: VoronoiPrep, sites) -> np.ndarray:
    idx = [prep.site_index(s) for s in sites]
    return graphic_cells(prep.P, [(prep.Db[i], prep.De[i]) for i in idx], sites)


# ---------------------------------------------------------------------------
# bisectors


@dataclass
class BisectorFamily:
    source: int
    target: int
    thresholds: list
    walk_ids: range
    prep: VoronoiPrep = field(repr=False)

    def lookup(self, w: ExactLength) -> int:
        """Walk id for weight difference w = w_t - w_s."""
        i, j = self.prep.index[self.source], self.prep.index[self.target]
        return self.walk_ids[self.prep.gap(i, j, w)]

    def walks(self):
        return [self.prep.walk(w) for w in self.walk_ids]


def bisector_family(prep: VoronoiPrep, v_s: int, v_t: int) -> BisectorFamily:
    if v_s == v_t:
        raise InvalidSitePair("a bisector needs two distinct site vertices")
    i, j = prep.index[v_s], prep.index[v_t]
    tb, te = prep.thresholds(i, j)
    thr = [ExactLength(int(a), int(c)) for a, c in zip(tb, te)]
    return BisectorFamily(v_s, v_t, thr, prep.pair_walks(i, j), prep)


def bisector(prep: VoronoiPrep, s: Site, t: Site) -> Bisector:
    if s.vertex == t.vertex:
        raise InvalidSitePair("a bisector needs two distinct site vertices")
    i, j = prep.site_index(s), prep.site_index(t)
    w = t.weight - s.weight
    eta = [ExactLength(int(a), int(c)) for a, c in zip(prep.Db[i] - prep.Db[j], prep.De[i] - prep.De[j])]
    if any(e == w for e in eta):
        raise TieDetected("a piece vertex is equidistant from both sites")
    near_s = sum(1 for e in eta if e < w)
    if near_s == 0 or near_s == len(eta):
        raise EmptyCell("one of the two sites owns no vertex of the piece")
    wid = prep.walk_base[i * prep.b + j] + prep.gap(i, j, w)
    return Bisector(DualWalk(tuple(prep.walk(wid).tolist()), True), s.vertex, t.vertex)


# ---------------------------------------------------------------------------
# diagrams


@dataclass
class AVD:
    sites: list
    edges: dict          # (s_pos, t_pos) -> (walk id, lo, hi) with lo <= hi
    prep: VoronoiPrep = field(repr=False)

    def boundary(self, k: int) -> list:
        """Edges of cell k in clockwise order, starting at the outer face."""
        prep = self.prep
        i = prep.site_index(self.sites[k])
        mine = [(t, w, lo, hi) for (s, t), (w, lo, hi) in self.edges.items() if s == k]
        mine.sort(key=lambda e: prep.tpos[i, prep.arcs[prep.arc_off[e[1]] + e[2]]])
        for r, e in enumerate(mine):
            if prep.P.face_of[prep.arcs[prep.arc_off[e[1]] + e[2]]] == prep.ainf:
                mine = mine[r:] + mine[:r]
                break
        return mine

    def cell_walk(self, k: int) -> DualWalk:
        arcs = []
        for _, w, lo, hi in self.boundary(k):
            a0 = self.prep.arc_off[w]
            arcs.extend(self.prep.arcs[a0 + lo:a0 + hi + 1].tolist())
        return DualWalk(tuple(arcs), True)

    def cells(self) -> np.ndarray:
        """Owner of each piece vertex, read back from the cell walks."""
        owner = np.full(self.prep.P.n, -1, dtype=np.int64)
        if len(self.sites) == 1:
            owner[:] = 0
            return owner
        for k in range(len(self.sites)):
            walk = self.cell_walk(k)
            if not walk.arcs:
                continue
            for v in enclosed_vertices(self.prep.P, walk):
                if owner[v] >= 0:
                    raise AssertionError("cells overlap")
                owner[v] = k
        return owner

    def vertices(self) -> set:
        """Dual vertices where three or more cells meet, besides the outer face."""
        prep = self.prep
        out = set()
        for (s, t), (w, lo, hi) in self.edges.items():
            L = prep.arc_off[w + 1] - prep.arc_off[w]
            if hi < L - 1:
                out.add(int(prep.P.face_of[prep.arcs[prep.arc_off[w] + hi] ^ 1]))
        return out


def _diagram(prep: VoronoiPrep, sites) -> AVD:
    Y = np.array([prep.site_index(s) for s in sites], dtype=np.int64)
    lb = np.array([s.weight.base for s in sites], dtype=np.int64)
    le = np.array([s.weight.eps for s in sites], dtype=np.int64)
    wid, lo, hi = avd_ranges(Y, lb, le, prep.b, prep.Db, prep.De, prep.thr_off, prep.thr_b,
                             prep.thr_e, prep.walk_base, prep.arc_off, prep.arc_tail, prep.arc_head)
    edges = {}
    for i in range(len(Y)):
        for j in range(len(Y)):
            if i != j and lo[i, j] <= hi[i, j]:
                edges[(i, j)] = (int(wid[i, j]), int(lo[i, j]), int(hi[i, j]))
    return AVD(list(sites), edges, prep)


def _check_sites(prep: VoronoiPrep, sites):
    if len({s.vertex for s in sites}) != len(sites):
        raise InvalidSitePair("two sites share a vertex")
    prep_cells(prep, sites)  # raises TieDetected / EmptyCell


class ThreeSiteTable:
    """Three-site diagrams, memoised per cell of the weight arrangement.

    With w_q = 0 the lines of the three pair families cut the (w_s, w_t)
    plane into cells. A cell is named by the gap index of each pair, found
    by binary search, and its diagram is computed once.
    """

    def __init__(self, prep: VoronoiPrep, v_q: int, v_s: int, v_t: int):
        self.prep = prep
        self.locs = (v_q, v_s, v_t)
        self.memo: dict = {}

    def cell(self, w_s: ExactLength, w_t: ExactLength) -> tuple:
        p = self.prep
        q, s, t = (p.index[v] for v in self.locs)
        zero = ExactLength(0)
        return (p.gap(q, s, w_s - zero), p.gap(q, t, w_t - zero), p.gap(s, t, w_t - w_s))

    def diagram(self, w_s: ExactLength, w_t: ExactLength) -> AVD:
        key = self.cell(w_s, w_t)
        hit = self.memo.get(key)
        if hit is None:
            v_q, v_s, v_t = self.locs
            hit = _diagram(self.prep, [Site(v_q), Site(v_s, w_s), Site(v_t, w_t)])
            self.memo[key] = hit
        return hit


def three_site_table(prep: VoronoiPrep, v_q: int, v_s: int, v_t: int) -> ThreeSiteTable:
    return ThreeSiteTable(prep, v_q, v_s, v_t)


def four_site_avd(prep: VoronoiPrep, sites) -> AVD:
    if len(sites) != 4:
        raise ValueError("four_site_avd takes exactly four sites")
    _check_sites(prep, sites)
    return _diagram(prep, sites)


def build_avd(prep: VoronoiPrep, sites, rng=None, check: bool = True) -> AVD:
    """Randomized incremental construction.

    Sites are inserted in random order. Each insertion trims every existing
    edge range against the new site and opens the ranges of the new site's
    own edges. Ranges are intersections of three-site survivals, so the
    final diagram does not depend on the order.
    """
    sites = list(sites)
    if check:
        _check_sites(prep, sites)
    rng = np.random.default_rng(0) if rng is None else rng
    order = rng.permutation(len(sites)).tolist()
    idx = [prep.site_index(s) for s in sites]
    lb = [s.weight.base for s in sites]
    le = [s.weight.eps for s in sites]
    current: list = []
    ranges: dict = {}
    for k in order:
        for (a, c), (w, lo, hi) in list(ranges.items()):
            lo2, hi2 = _survive(prep, idx, lb, le, a, c, k, w)
            lo, hi = max(lo, lo2), min(hi, hi2)
            if lo > hi:
                del ranges[(a, c)]
            else:
                ranges[(a, c)] = (w, lo, hi)
        for a in current:
            for s_pos, t_pos in ((k, a), (a, k)):
                w = int(prep.walk_base[idx[s_pos] * prep.b + idx[t_pos]]
                        + prep.gap(idx[s_pos], idx[t_pos],
                                   ExactLength(lb[t_pos] - lb[s_pos], le[t_pos] - le[s_pos])))
                lo, hi = 0, int(prep.arc_off[w + 1] - prep.arc_off[w]) - 1
                for c in current:
                    if c == a or lo > hi:
                        continue
                    lo2, hi2 = _survive(prep, idx, lb, le, s_pos, t_pos, c, w)
                    lo, hi = max(lo, lo2), min(hi, hi2)
                if lo <= hi:
                    ranges[(s_pos, t_pos)] = (w, lo, hi)
        current.append(k)
    return AVD(sites, ranges, prep)


def _survive(prep, idx, lb, le, a, c, k, w):
    return surviving_range(prep.arc_tail, prep.arc_head, prep.arc_off[w], prep.arc_off[w + 1],
                           prep.Db, prep.De, idx[a], idx[c], idx[k],
                           lb[a], le[a], lb[c], le[c], lb[k], le[k])


# ---------------------------------------------------------------------------
# axiom checks and debug output


def _cyclic_equal(a, b) -> bool:
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a == b[i:] + b[:i] for i in range(len(b)) if b[i] == a[0])


def axiom_violations(prep: VoronoiPrep, sites) -> list:
    """Names of the diagram axioms that fail for this site set."""
    bad = []
    P = prep.P
    owner = prep_cells(prep, sites)
    for s in sites:
        for t in sites:
            if s is t:
                continue
            walk = bisector(prep, s, t).walk
            back = bisector(prep, t, s).walk.reversed()
            if not _cyclic_equal(walk.arcs, back.arcs):
                bad.append("A1")
            if sum(1 for a in walk.arcs if P.face_of[a] == prep.ainf) != 1:
                bad.append("A3")
    avd = build_avd(prep, sites, check=False)
    if not np.array_equal(avd.cells(), owner):
        bad.append("A2")
    # cells of the full graph are connected there
    g = prep.g
    idx = [prep.site_index(s) for s in sites]
    full = []
    for s, i in zip(sites, idx):
        db, de, _ = prep.engine.from_source(prep.X[i])
        full.append((db + s.weight.base, de + s.weight.eps))
    keys = np.stack([f[0] for f in full]), np.stack([f[1] for f in full])
    gowner = np.lexsort((keys[1], keys[0]), axis=0)[0]
    for k in range(len(sites)):
        members = set(np.flatnonzero(gowner == k).tolist())
        start = prep.X[idx[k]]
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for d in g.rotation[u]:
                v = int(g.head[d])
                if v in members and v not in seen:
                    seen.add(v)
                    stack.append(v)
        if seen != members:
            bad.append("A4")
    for orbit in P.orbits:
        if not any(owner[P.tail[d]] >= 0 for d in orbit):
            bad.append("A5")
    if len(sites) == 3 and len(avd.vertices()) > 1:
        bad.append("one-vertex")
    return sorted(set(bad))


def tutte_layout(g: EmbeddedGraph) -> np.ndarray:
    """Barycentric drawing with the outer face pinned to a circle."""
    from scipy.sparse import lil_matrix
    from scipy.sparse.linalg import spsolve

    ring = list(dict.fromkeys(int(g.tail[d]) for d in g.orbits[g.outer_face]))
    pos = np.zeros((g.n, 2))
    ang = -2 * np.pi * np.arange(len(ring)) / max(1, len(ring))
    pos[ring, 0], pos[ring, 1] = np.cos(ang), np.sin(ang)
    fixed = np.zeros(g.n, dtype=bool)
    fixed[ring] = True
    free = np.flatnonzero(~fixed)
    if len(free) == 0:
        return pos
    where = {int(v): i for i, v in enumerate(free)}
    A = lil_matrix((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for v in free.tolist():
        i = where[v]
        for d in g.rotation[v]:
            u = int(g.head[d])
            A[i, i] += 1
            if fixed[u]:
                rhs[i] += pos[u]
            else:
                A[i, where[u]] -= 1
    sol = spsolve(A.tocsr(), rhs)
    pos[free] = sol.reshape(len(free), 2)
    return pos


def avd_svg(avd: AVD, size: int = 600) -> str:
    """Piece drawn with each vertex colored by the site that owns it."""
    P = avd.prep.P
    pos = tutte_layout(P)
    lo, hi = pos.min(axis=0), pos.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1)
    xy = 20 + (pos - lo) / span * (size - 40)
    owner = avd.cells()
    palette = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
               "#f032e6", "#bfef45", "#469990", "#9a6324"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for d in range(0, P.num_darts, 2):
        (x0, y0), (x1, y1) = xy[P.tail[d]], xy[P.head[d]]
        cross = owner[P.tail[d]] != owner[P.head[d]]
        out.append(f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" y2="{y1:.1f}" '
                   f'stroke="{"#000" if cross else "#bbb"}" stroke-width="{2 if cross else 1}"/>')
    sites = {int(avd.prep.vloc[s.vertex]) for s in avd.sites}
    for v in range(P.n):
        col = palette[owner[v] % len(palette)] if owner[v] >= 0 else "#777"
        r = 7 if v in sites else 4
        out.append(f'<circle cx="{xy[v, 0]:.1f}" cy="{xy[v, 1]:.1f}" r="{r}" fill="{col}"/>')
    out.append("</svg>")
    return "\n".join(out)
