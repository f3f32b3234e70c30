"""Per-piece distance queries for an apex attached to outer-face sites.

An apex x0 reaches site y with length lambda_y. Every piece vertex u
then sits at distance min_y (lambda_y + d(y, u)). The vertices won by y
form the Voronoi cell of y, whose boundary is a handful of ranges into
precomputed bisector walks. Sums, maxima and counts over the cell come
from per-site structures built over those walks.

All per-site data is flattened so one numba kernel answers a whole batch
of queries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .aggregation import TourMax, bfs_order, chi_from_tree
from .errors import ConditionViolated, ValidationError
from .planar_core import NEG_INF, EmbeddedGraph, ExactLength, SubEmbedding
from .rmq import NEG, build_table, range_max
from .shortest_paths import Potential
from .voronoi import VoronoiPrep, _less, avd_ranges

FLAVORS = ("sum", "max", "count")


@dataclass(frozen=True)
class PieceQuery:
    Y: tuple
    lam: tuple

    @classmethod
    def of(cls, mapping: dict) -> "PieceQuery":
        ys = tuple(sorted(mapping))
        return cls(ys, tuple(mapping[y] for y in ys))


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True)
def _alive(Y, lb, le, Db, De, sloc, i):
    """Site Y[i] owns its own vertex, hence a nonempty cell."""
    v = sloc[Y[i]]
    for j in range(Y.shape[0]):
        if j != i and not _less(lb[i], le[i], lb[j] + Db[Y[j], v], le[j] + De[Y[j], v]):
            return False
    return True


@njit(cache=True)
def _sum_batch(qoff, Yf, lbf, lef, b, Db, De, sloc, thr_off, thr_b, thr_e, walk_base,
               arc_off, arc_tail, arc_head, pref_d, pref_1, tot_d, tot_1):
    nq = qoff.shape[0] - 1
    out = np.zeros(nq, dtype=np.int64)
    for q in range(nq):
        Y = Yf[qoff[q]:qoff[q + 1]]
        lb = lbf[qoff[q]:qoff[q + 1]]
        le = lef[qoff[q]:qoff[q + 1]]
        wid, lo, hi = avd_ranges(Y, lb, le, b, Db, De, thr_off, thr_b, thr_e, walk_base,
                                 arc_off, arc_tail, arc_head)
        k = Y.shape[0]
        acc = 0
        for i in range(k):
            sd = 0
            s1 = 0
            edges = 0
            for j in range(k):
                if j == i or lo[i, j] > hi[i, j]:
                    continue
                edges += 1
                w = wid[i, j]
                base = arc_off[w] + w
                sd += pref_d[base + hi[i, j] + 1] - pref_d[base + lo[i, j]]
                s1 += pref_1[base + hi[i, j] + 1] - pref_1[base + lo[i, j]]
            if edges == 0 and not _alive(Y, lb, le, Db, De, sloc, i):
                continue
            sd = tot_d[Y[i]] - sd
            s1 = tot_1[Y[i]] - s1
            acc += lb[i] * s1 + sd
        out[q] = acc
    return out


@njit(cache=True)
def _count_batch(qoff, Yf, lbf, lef, delta, b, Db, De, sloc, thr_off, thr_b, thr_e, walk_base,
                 arc_off, arc_tail, arc_head, cthr_off, cthr, ctot, cblock, crow, cslot0, cpref):
    nq = qoff.shape[0] - 1
    out = np.zeros(nq, dtype=np.int64)
    for q in range(nq):
        Y = Yf[qoff[q]:qoff[q + 1]]
        lb = lbf[qoff[q]:qoff[q + 1]]
        le = lef[qoff[q]:qoff[q + 1]]
        wid, lo, hi = avd_ranges(Y, lb, le, b, Db, De, thr_off, thr_b, thr_e, walk_base,
                                 arc_off, arc_tail, arc_head)
        k = Y.shape[0]
        acc = 0
        for i in range(k):
            s = Y[i]
            # largest threshold not above delta - lambda (base parts only)
            lim = delta[q] - lb[i]
            a, c = cthr_off[s], cthr_off[s + 1]
            while a < c:
                m = (a + c) >> 1
                if cthr[m] <= lim:
                    a = m + 1
                else:
                    c = m
            lvl = a - cthr_off[s] - 1
            if lvl < 0:
                continue
            row = cblock[s] + lvl * crow[s] - cslot0[s]
            sub = 0
            edges = 0
            for j in range(k):
                if j == i or lo[i, j] > hi[i, j]:
                    continue
                edges += 1
                w = wid[i, j]
                base = row + arc_off[w] + w
                sub += cpref[base + hi[i, j] + 1] - cpref[base + lo[i, j]]
            if edges == 0 and not _alive(Y, lb, le, Db, De, sloc, i):
                continue
            acc += ctot[cthr_off[s] + lvl] - sub
        out[q] = acc
    return out


@njit(cache=True)
def _junction(s, a, b, tables, col_off, tsize, start, stop, face_of, orbit_pos, flen,
              bridge_off, bridge):
    f = face_of[b]
    bo = bridge_off[s, f]
    if bo >= 0:
        return bridge[bo + orbit_pos[a ^ 1] * flen[f] + orbit_pos[b]]
    T = tsize[s]
    lo = stop[s, a]
    cnt = (start[s, b] - lo - 1) % T
    if cnt == 0:
        return NEG
    c0 = col_off[s]
    l1 = (lo + 1) % T
    h1 = (lo + cnt) % T
    if l1 <= h1:
        return range_max(tables, c0 + l1, c0 + h1)
    x = range_max(tables, c0 + l1, c0 + T - 1)
    y = range_max(tables, c0, c0 + h1)
    return x if x > y else y


@njit(cache=True)
def _max_batch(qoff, Yf, lbf, lef, b, Db, De, sloc, thr_off, thr_b, thr_e, walk_base,
               arc_off, arc_tail, arc_head, arcs, pair_table, best, tables, col_off, tsize,
               start, stop, face_of, orbit_pos, flen, bridge_off, bridge):
    nq = qoff.shape[0] - 1
    out_b = np.full(nq, NEG, dtype=np.int64)
    for q in range(nq):
        Y = Yf[qoff[q]:qoff[q + 1]]
        lb = lbf[qoff[q]:qoff[q + 1]]
        le = lef[qoff[q]:qoff[q + 1]]
        wid, lo, hi = avd_ranges(Y, lb, le, b, Db, De, thr_off, thr_b, thr_e, walk_base,
                                 arc_off, arc_tail, arc_head)
        k = Y.shape[0]
        res = NEG
        keys = np.empty(k, dtype=np.int64)
        ids = np.empty(k, dtype=np.int64)
        for i in range(k):
            s = Y[i]
            ne = 0
            for j in range(k):
                if j != i and lo[i, j] <= hi[i, j]:
                    keys[ne] = start[s, arcs[arc_off[wid[i, j]] + lo[i, j]]]
                    ids[ne] = j
                    ne += 1
            if ne == 0:
                if not _alive(Y, lb, le, Db, De, sloc, i):
                    continue
                m = best[s]
            else:
                order = np.argsort(keys[:ne])
                m = NEG
                for e in range(ne):
                    j = ids[order[e]]
                    w = wid[i, j]
                    a0 = arc_off[w]
                    x = range_max(pair_table, a0 + lo[i, j], a0 + hi[i, j] - 1)
                    if x > m:
                        m = x
                    j2 = ids[order[(e + 1) % ne]]
                    w2 = wid[i, j2]
                    x = _junction(s, arcs[a0 + hi[i, j]], arcs[arc_off[w2] + lo[i, j2]], tables,
                                  col_off, tsize, start, stop, face_of, orbit_pos, flen,
                                  bridge_off, bridge)
                    if x > m:
                        m = x
            if m != NEG and lb[i] + m > res:
                res = lb[i] + m
        out_b[q] = res
    return out_b


# ---------------------------------------------------------------------------
# structure


class PieceStructure:
    def __init__(self, g: EmbeddedGraph, piece: SubEmbedding | None, X, U, flavor,
                 potential: Potential | None = None, engine=None, prep: VoronoiPrep | None = None):
        flavors = (flavor,) if isinstance(flavor, str) else tuple(flavor)
        if "all" in flavors:
            flavors = FLAVORS
        for f in flavors:
            if f not in FLAVORS:
                raise ValidationError(f"unknown flavor {f!r}")
        self.flavors = flavors
        self.prep = prep if prep is not None else VoronoiPrep(g, piece, X, potential, engine)
        p = self.prep
        P = p.P
        self.U = np.zeros(P.n, dtype=bool)
        for u in U:
            lu = int(p.vloc[u]) if 0 <= u < len(p.vloc) else -1
            if lu < 0:
                raise ValidationError(f"vertex {u} of U is not in the piece")
            self.U[lu] = True
        self.sloc = np.array([p.vloc[x] for x in p.X], dtype=np.int64)
        b = p.b
        nw = len(p.arc_off) - 1
        self.slot_start = p.arc_off[:-1] + np.arange(nw)
        # arcs and prefix slots of site i are contiguous
        self.site_walks = [(int(p.walk_base[i * b]), int(p.walk_base[(i + 1) * b])) for i in range(b)]
        if "sum" in flavors:
            self._build_sum()
        if "count" in flavors:
            self._build_count()
        if "max" in flavors:
            self._build_max()

    # -- sum ---------------------------------------------------------------
    def _fill(self, out, i, chi, shift=0):
        p = self.prep
        w0, w1 = self.site_walks[i]
        for w in range(w0, w1):
            a = p.arcs[p.arc_off[w]:p.arc_off[w + 1]]
            s = self.slot_start[w] - shift
            out[s + 1:s + 1 + len(a)] = np.cumsum(chi[a])

    def _prefix(self, chis) -> np.ndarray:
        """Walk prefix sums of per-site dart weights, flat as in WalkFamily."""
        p = self.prep
        out = np.zeros(p.arc_off[-1] + len(p.arc_off) - 1, dtype=np.int64)
        for i in range(p.b):
            self._fill(out, i, chis[i])
        return out

    def _trees(self):
        P = self.prep.P
        return [bfs_order(P, int(v)) for v in self.sloc]

    def _build_sum(self):
        p = self.prep
        trees = self._trees()
        u1 = self.U.astype(np.int64)
        wd = [np.where(self.U, p.Db[i], 0) for i in range(p.b)]
        self.pref_d = self._prefix([chi_from_tree(p.P, *trees[i], wd[i]) for i in range(p.b)])
        self.pref_1 = self._prefix([chi_from_tree(p.P, *trees[i], u1) for i in range(p.b)])
        self.tot_d = np.array([int(w.sum()) for w in wd], dtype=np.int64)
        self.tot_1 = np.full(p.b, int(u1.sum()), dtype=np.int64)

    # -- count -------------------------------------------------------------
    def _build_count(self):
        p = self.prep
        trees = self._trees()
        thr, tot, blocks = [], [], []
        off = [0]
        cblock, crow, cslot0 = [], [], []
        size = 0
        for i in range(p.b):
            vals = p.Db[i][self.U]
            t = np.unique(vals)
            thr.append(t)
            off.append(off[-1] + len(t))
            w0, w1 = self.site_walks[i]
            s0 = int(self.slot_start[w0]) if w0 < w1 else 0
            s1 = int(self.slot_start[w1 - 1] + (p.arc_off[w1] - p.arc_off[w1 - 1]) + 1) if w0 < w1 else 0
            L = s1 - s0
            cblock.append(size)
            crow.append(L)
            cslot0.append(s0)
            for level in t:
                ind = (self.U & (p.Db[i] <= level)).astype(np.int64)
                tot.append(int(ind.sum()))
                blk = np.zeros(L, dtype=np.int64)
                self._fill(blk, i, chi_from_tree(p.P, *trees[i], ind), s0)
                blocks.append(blk)
                size += L
        self.cthr_off = np.array(off, dtype=np.int64)
        self.cthr = np.concatenate(thr) if thr else np.zeros(0, dtype=np.int64)
        self.ctot = np.array(tot, dtype=np.int64)
        self.cblock = np.array(cblock, dtype=np.int64)
        self.crow = np.array(crow, dtype=np.int64)
        self.cslot0 = np.array(cslot0, dtype=np.int64)
        self.cpref = np.concatenate(blocks) if blocks else np.zeros(1, dtype=np.int64)

    # -- max ---------------------------------------------------------------
    def _build_max(self):
        p = self.prep
        P = p.P
        b = p.b
        nd = P.num_darts
        pair = np.full(max(1, int(p.arc_off[-1])), NEG, dtype=np.int64)
        tours = []
        for i in range(b):
            wts = np.where(self.U, p.Db[i], NEG)
            tm = TourMax(p.g, p.sub, p.parent[i], p.X[i], wts)
            tours.append(tm)
            w0, w1 = self.site_walks[i]
            a0, a1 = int(p.arc_off[w0]), int(p.arc_off[w1])
            if a1 > a0:
                ends = p.arc_off[w0 + 1:w1 + 1] - 1
                keep = np.ones(a1 - a0, dtype=bool)
                keep[ends - a0] = False
                idx = np.flatnonzero(keep) + a0
                if len(idx):
                    pair[idx] = tm.scores(p.arcs[idx], p.arcs[idx + 1])
        self.pair = pair
        self.pair_table = build_table(pair)
        self.best = np.array([tm.best for tm in tours], dtype=np.int64)
        self.tsize = np.array([tm.size for tm in tours], dtype=np.int64)
        self.col_off = np.zeros(b + 1, dtype=np.int64)
        self.col_off[1:] = np.cumsum(self.tsize)
        levels = max(tm.table.shape[0] for tm in tours) if tours else 1
        self.tables = np.full((levels, max(1, int(self.col_off[-1]))), NEG, dtype=np.int64)
        self.start = np.zeros((b, nd), dtype=np.int64)
        self.stop = np.zeros((b, nd), dtype=np.int64)
        flen = np.array([len(o) for o in P.orbits], dtype=np.int64)
        self.flen = flen
        self.bridge_off = np.full((b, P.num_faces), -1, dtype=np.int64)
        bridge = []
        used = 0
        for i, tm in enumerate(tours):
            c0 = self.col_off[i]
            self.tables[:tm.table.shape[0], c0:c0 + tm.size] = tm.table[:, :tm.size]
            self.start[i] = tm.start
            self.stop[i] = tm.stop
            for f in tm.chords:
                orb = np.asarray(P.orbits[f], dtype=np.int64)
                L = len(orb)
                aa = np.repeat(orb ^ 1, L)
                bb = np.tile(orb, L)
                bridge.append(tm.scores(aa, bb))
                self.bridge_off[i, f] = used
                used += L * L
        self.bridge = np.concatenate(bridge) if bridge else np.zeros(1, dtype=np.int64)

    # -- queries -----------------------------------------------------------
    def _pack(self, queries, check: bool):
        p = self.prep
        qoff = [0]
        ys, lbs, les = [], [], []
        for q in queries:
            idx = []
            for y in q.Y:
                if y not in p.index:
                    raise ValidationError(f"site {y} is not in X")
                idx.append(p.index[y])
            if len(set(idx)) != len(idx):
                raise ValidationError("repeated site in Y")
            if check:
                self.check_condition(q)
            ys.extend(idx)
            lbs.extend(l.base for l in q.lam)
            les.extend(l.eps for l in q.lam)
            qoff.append(len(ys))
        return (np.array(qoff, dtype=np.int64), np.array(ys, dtype=np.int64),
                np.array(lbs, dtype=np.int64), np.array(les, dtype=np.int64))

    def check_condition(self, q: PieceQuery) -> None:
        """lambda_y < lambda_y' + d(y', y) for every ordered pair of sites."""
        p = self.prep
        for y, ly in zip(q.Y, q.lam):
            for y2, ly2 in zip(q.Y, q.lam):
                if y == y2:
                    continue
                i2 = p.index[y2]
                d = ExactLength(int(p.Db[i2, p.vloc[y]]), int(p.De[i2, p.vloc[y]]))
                if not ly < ly2 + d:
                    raise ConditionViolated(f"site {y} is reached more cheaply through {y2}")

    def _need(self, flavor):
        if flavor not in self.flavors:
            raise ValidationError(f"structure was not built for {flavor} queries")

    def _common(self):
        p = self.prep
        return (p.b, p.Db, p.De, self.sloc, p.thr_off, p.thr_b, p.thr_e, p.walk_base,
                p.arc_off, p.arc_tail, p.arc_head)

    def run(self, flavor: str, qoff, Y, lb, le, delta_base: int = 0) -> np.ndarray:
        """Batch entry for pre-packed queries; Y holds site indices into X."""
        self._need(flavor)
        if flavor == "sum":
            return _sum_batch(qoff, Y, lb, le, *self._common(), self.pref_d, self.pref_1,
                              self.tot_d, self.tot_1)
        if flavor == "count":
            delta = np.full(len(qoff) - 1, delta_base, dtype=np.int64)
            return _count_batch(qoff, Y, lb, le, delta, *self._common(), self.cthr_off,
                                self.cthr, self.ctot, self.cblock, self.crow, self.cslot0,
                                self.cpref)
        P = self.prep.P
        return _max_batch(qoff, Y, lb, le, *self._common(), self.prep.arcs, self.pair_table,
                          self.best, self.tables, self.col_off, self.tsize, self.start, self.stop,
                          P.face_of, P.orbit_pos, self.flen, self.bridge_off, self.bridge)

    def sums(self, queries, check: bool = False) -> np.ndarray:
        return self.run("sum", *self._pack(queries, check))

    def counts(self, queries, delta_base: int, check: bool = False) -> np.ndarray:
        return self.run("count", *self._pack(queries, check), delta_base=delta_base)

    def maxima(self, queries, check: bool = False) -> np.ndarray:
        return self.run("max", *self._pack(queries, check))


def preprocess(g: EmbeddedGraph, piece: SubEmbedding | None, X, U, flavor="all",
               potential: Potential | None = None) -> PieceStructure:
    return PieceStructure(g, piece, X, U, flavor, potential)


def query_sum(ps: PieceStructure, q: PieceQuery) -> ExactLength:
    return ExactLength(int(ps.sums([q], check=True)[0]))


def query_max(ps: PieceStructure, q: PieceQuery) -> ExactLength:
    v = int(ps.maxima([q], check=True)[0])
    return NEG_INF if v == NEG else ExactLength(v)


def query_count(ps: PieceStructure, q: PieceQuery, delta: ExactLength) -> int:
    return int(ps.counts([q], delta.base, check=True)[0])
