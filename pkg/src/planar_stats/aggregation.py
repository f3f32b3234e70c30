"""Sums, counts and maxima of vertex weights inside dual walks.

A walk is described as a cyclic list of WalkRef pieces cut out of a
preprocessed family of dual paths, and each query touches only the
piece endpoints:

* sums use an antisymmetric dart weight ``chi`` read off a spanning tree, so
  that the chi-total of a clockwise walk equals the weight outside it;
* counts keep one 0/1 sum structure per distinct weight;
* maxima use an Euler tour of a spanning tree: along a star-shaped walk the
  crossed darts appear in tour order and the interior is what the tour sees
  between consecutive crossings.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .errors import IndexOutOfRange, InvalidWalk, RootOutsidePiece
from .planar_core import DualWalk, EmbeddedGraph, SubEmbedding, enclosed_vertices
from .rmq import NEG, build_table, circular_max, range_max


@dataclass(frozen=True)
class ChiFunction:
    root: int
    chi: np.ndarray
    total: object


@dataclass(frozen=True)
class WalkRef:
    walk_index: int
    start_index: int
    end_index: int


def bfs_order(g: EmbeddedGraph, root: int):
    parent = np.full(g.n, -1, dtype=np.int64)
    seen = np.zeros(g.n, dtype=bool)
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for d in g.rotation[u]:
            v = int(g.head[d])
            if not seen[v]:
                seen[v] = True
                parent[v] = d
                order.append(v)
                queue.append(v)
    return np.array(order, dtype=np.int64), parent


def chi_from_tree(g: EmbeddedGraph, order, parent, w):
    """Dart weights: +sigma(subtree) down a tree edge, minus that going up."""
    w = np.asarray(w)
    sub = w.astype(w.dtype, copy=True)
    chi = np.zeros(g.num_darts, dtype=w.dtype)
    for v in order[:0:-1].tolist():
        d = int(parent[v])
        sub[g.tail[d]] += sub[v]
        chi[d] = sub[v]
        chi[d ^ 1] = -sub[v]
    return chi


def build_chi(g: EmbeddedGraph, x0: int, w) -> ChiFunction:
    order, parent = bfs_order(g, x0)
    w = np.asarray(w)
    return ChiFunction(x0, chi_from_tree(g, order, parent, w), w.sum())


def _as_arrays(walks):
    arrs = [np.asarray(getattr(w, "arcs", w), dtype=np.int64) for w in walks]
    offsets = np.zeros(len(arrs) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(a) for a in arrs])
    flat = np.concatenate(arrs) if arrs else np.zeros(0, dtype=np.int64)
    return arrs, flat, offsets


def _check_paths(g: EmbeddedGraph, arrs) -> None:
    for i, a in enumerate(arrs):
        if len(a) and (a.min() < 0 or a.max() >= g.num_darts):
            raise InvalidWalk(f"walk {i} names an unknown dart")
        if len(a) > 1 and (g.face_of[a[:-1] ^ 1] != g.face_of[a[1:]]).any():
            raise InvalidWalk(f"walk {i} has consecutive arcs without a common dual vertex")


def _prefix(values, arrs, offsets):
    """Per-walk prefix sums laid out flat; walk i starts at offsets[i] + i."""
    out = np.zeros(len(offsets) - 1 + offsets[-1], dtype=values.dtype)
    for i, a in enumerate(arrs):
        s = offsets[i] + i
        out[s + 1:s + 1 + len(a)] = np.cumsum(values[a])
    return out


class WalkFamily:
    def __init__(self, g: EmbeddedGraph, chi: ChiFunction, walks):
        self.g = g
        self.chi = chi
        self.walks, self.flat, self.offsets = _as_arrays(walks)
        _check_paths(g, self.walks)
        self.prefix = _prefix(chi.chi, self.walks, self.offsets)

    def S(self, i: int, j: int):
        """Sum of chi over the first j arcs of walk i."""
        return self.prefix[self.offsets[i] + i + j]

    def piece_sum(self, ref: WalkRef):
        i, a, b = ref.walk_index, ref.start_index, ref.end_index
        return self.S(i, b + 1) - self.S(i, a)


def build_walk_family(g: EmbeddedGraph, chi: ChiFunction, walks) -> WalkFamily:
    return WalkFamily(g, chi, walks)


def _validate(g, walks, gamma):
    k = len(gamma)
    for r in gamma:
        if not 0 <= r.walk_index < len(walks):
            raise IndexOutOfRange(f"no walk {r.walk_index}")
        n = len(walks[r.walk_index])
        if not 0 <= r.start_index <= r.end_index < n:
            raise IndexOutOfRange(f"bad range {r.start_index}..{r.end_index} on a walk of {n} arcs")
    for t in range(k):
        a = walks[gamma[t].walk_index][gamma[t].end_index]
        nxt = gamma[(t + 1) % k]
        b = walks[nxt.walk_index][nxt.start_index]
        if g.face_of[a ^ 1] != g.face_of[b]:
            raise InvalidWalk("consecutive pieces do not meet at a dual vertex")


def query_sum(f: WalkFamily, gamma, total=None):
    """Weight enclosed by the clockwise walk ``gamma`` (root inside)."""
    _validate(f.g, f.walks, gamma)
    outside = sum((f.piece_sum(r) for r in gamma), f.chi.chi.dtype.type(0))
    return (f.chi.total if total is None else total) - outside


class CountStructure:
    def __init__(self, g: EmbeddedGraph, x0: int, w, walks):
        w = np.asarray(w)
        self.g = g
        self.thresholds = np.unique(w)
        self.walks, self.flat, self.offsets = _as_arrays(walks)
        _check_paths(g, self.walks)
        order, parent = bfs_order(g, x0)
        rows = []
        totals = []
        for t in self.thresholds:
            ind = (w <= t).astype(np.int64)
            totals.append(int(ind.sum()))
            rows.append(_prefix(chi_from_tree(g, order, parent, ind), self.walks, self.offsets))
        self.prefix = np.array(rows, dtype=np.int64).reshape(len(rows), -1)
        self.totals = np.array(totals, dtype=np.int64)

    def level(self, delta) -> int:
        """Index of the largest threshold not above delta, or -1."""
        return int(np.searchsorted(self.thresholds, delta, side="right")) - 1

    def piece_count(self, k: int, r: WalkRef) -> int:
        s = self.offsets[r.walk_index] + r.walk_index
        return int(self.prefix[k, s + r.end_index + 1] - self.prefix[k, s + r.start_index])


def build_count(g: EmbeddedGraph, x0: int, w, walks) -> CountStructure:
    return CountStructure(g, x0, w, walks)


def query_count(c: CountStructure, gamma, delta) -> int:
    _validate(c.g, c.walks, gamma)
    k = c.level(delta)
    if k < 0:
        return 0
    return int(c.totals[k]) - sum(c.piece_count(k, r) for r in gamma)


# ---------------------------------------------------------------------------
# maxima


@njit(cache=True)
def euler_tour(n, off, adj, head, rot_next, parent_dart, root):
    """Clockwise Euler tour of a spanning tree, numbering every dart.

    Slot 0 is the root's first visit. A tree dart p->c gets the slot of c's
    first visit; c->p is numbered when the tour leaves c; other darts get a
    slot when the tour passes them at their tail.
    """
    m2 = adj.shape[0]
    pos = np.full(m2, -1, dtype=np.int64)
    vslot = np.full(m2 + 1, -1, dtype=np.int64)
    vslot[0] = root
    counter = 1
    su = np.empty(n, dtype=np.int64)
    sd = np.empty(n, dtype=np.int64)
    ss = np.empty(n, dtype=np.int64)
    if off[root + 1] == off[root]:
        return pos, vslot, counter
    top = 0
    su[0] = root
    sd[0] = adj[off[root]]
    ss[0] = adj[off[root]]
    fresh = True
    while top >= 0:
        u = su[top]
        d = sd[top]
        if d == ss[top] and not (u == root and top == 0 and fresh):
            top -= 1
            if u != root:
                pos[parent_dart[u] ^ 1] = counter
                counter += 1
            continue
        if top == 0:
            fresh = False
        sd[top] = rot_next[d]
        c = head[d]
        if parent_dart[c] == d:
            pos[d] = counter
            vslot[counter] = c
            counter += 1
            top += 1
            su[top] = c
            sd[top] = rot_next[d ^ 1]
            ss[top] = d ^ 1
        else:
            pos[d] = counter
            counter += 1
    return pos, vslot, counter


@njit(cache=True)
def plain_scores(table, tsize, start, stop, pairs_a, pairs_b):
    """Maximum strictly between resume(a) and pos(b) on the cyclic tour."""
    out = np.empty(pairs_a.shape[0], dtype=np.int64)
    for i in range(pairs_a.shape[0]):
        lo = stop[pairs_a[i]]
        cnt = (start[pairs_b[i]] - lo - 1) % tsize
        if cnt == 0:
            out[i] = NEG
        else:
            out[i] = circular_max(table, tsize, lo + 1, lo + cnt)
    return out


class TourMax:
    """Tour of a spanning tree of ``g`` seen from the darts of a piece.

    ``weights`` live on piece vertices (NEG for "absent"). Tour slots that
    matter are compressed to ranks so tables stay piece-sized even when the
    tree spans a much larger graph.
    """

    def __init__(self, g: EmbeddedGraph, sub: SubEmbedding | None, parent_dart, root, weights):
        self.g = g
        self.sub = sub
        parent_dart = np.asarray(parent_dart, dtype=np.int64)
        if sub is None:
            vert = np.arange(g.n)
            vloc = vert
            pdart = np.arange(g.num_darts)
        else:
            vert, vloc, pdart = sub.vert, sub.vloc, sub.dart
        if vloc[root] < 0:
            raise RootOutsidePiece(f"root {root} is not a piece vertex")
        off = np.zeros(g.n + 1, dtype=np.int64)
        off[1:] = np.cumsum([len(c) for c in g.rotation])
        adj = np.fromiter((d for c in g.rotation for d in c), dtype=np.int64, count=g.num_darts)
        pos, vslot, total = euler_tour(g.n, off, adj, g.head, g.rot_next, parent_dart, root)
        if (pos < 0).any():
            raise ValueError("tree does not span the graph")
        tree = parent_dart[g.head] == np.arange(g.num_darts)
        resume = np.where(tree, pos[np.arange(g.num_darts) ^ 1], pos)

        w = np.asarray(weights, dtype=np.int64)
        full_vals = np.full(total, NEG, dtype=np.int64)
        has = vslot[:total] >= 0
        slots = np.flatnonzero(has)
        lv = vloc[vslot[slots]]
        inside = lv >= 0
        full_vals[slots[inside]] = w[lv[inside]]

        self.chords = self._chords(g, sub, parent_dart, root, vslot[:total]) if sub is not None else {}
        keep = [slots[inside], pos[pdart], resume[pdart]]
        for lst in self.chords.values():
            for ch in lst:
                keep.append(np.array([ch[2], ch[3]], dtype=np.int64))
        kept = np.unique(np.concatenate(keep))
        self.kept = kept
        self.size = len(kept)
        self.table = build_table(full_vals[kept])
        self.start = np.searchsorted(kept, pos[pdart])
        self.stop = np.searchsorted(kept, resume[pdart])
        self.best = int(full_vals.max()) if total else NEG
        self.rank = {int(x): i for i, x in enumerate(kept.tolist())} if self.chords else None

    def _chords(self, g, sub, parent_dart, root, vslot):
        """Tree paths between piece vertices that leave the piece, keyed by face.

        Each entry is (corner at upper end, corner at lower end, tour slot of
        the lower end, tour slot where the tour leaves it).
        """
        pg = sub.graph
        top = np.full(g.n, -1, dtype=np.int64)
        first = np.full(g.n, -1, dtype=np.int64)
        chords = {}
        pos_leave = {}
        for slot, v in enumerate(vslot.tolist()):
            if v < 0 or v == root:
                continue
            d = int(parent_dart[v])
            p = int(g.tail[d])
            if sub.vloc[p] >= 0:
                top[v], first[v] = p, d
            else:
                top[v], first[v] = top[p], first[p]
            if sub.vloc[v] >= 0 and not (first[v] == d and sub.dloc[d] >= 0):
                fa, ka = self._corner(g, sub, int(first[v]))
                fb, kb = self._corner(g, sub, d ^ 1)
                if fa != fb:
                    raise ValueError("tree path through a hole touches two faces")
                pos_leave[v] = (slot, d)
                chords.setdefault(fa, []).append([ka, kb, slot, None, d])
        # excursion ends: the slot at which the tour climbs back over d
        if chords:
            off = np.zeros(g.n + 1, dtype=np.int64)
            off[1:] = np.cumsum([len(c) for c in g.rotation])
            adj = np.fromiter((d for c in g.rotation for d in c), dtype=np.int64, count=g.num_darts)
            pos, _, _ = euler_tour(g.n, off, adj, g.head, g.rot_next, parent_dart, root)
            for lst in chords.values():
                for ch in lst:
                    ch[3] = int(pos[ch[4] ^ 1])
        return {f: [tuple(c[:4]) for c in lst] for f, lst in chords.items()}

    @staticmethod
    def _corner(g, sub, x):
        """Face and orbit position of the piece corner that contains dart x."""
        d = x
        while sub.dloc[d] < 0:
            d = int(g.rot_next[d])
        ld = int(sub.dloc[d])
        return int(sub.graph.face_of[ld]), int(sub.graph.orbit_pos[ld])

    def score(self, a: int, b: int) -> int:
        """Maximum weight the tour sees between crossing a and crossing b."""
        sub = self.sub
        f = int((sub.graph if sub is not None else self.g).face_of[b])
        chords = self.chords.get(f)
        if not chords:
            return int(plain_scores(self.table, self.size, self.start, self.stop,
                                    np.array([a]), np.array([b]))[0])
        pg = sub.graph
        L = len(pg.orbits[f])
        pa, pb = int(pg.orbit_pos[a ^ 1]), int(pg.orbit_pos[b])
        T = self.size
        lo = int(self.stop[a])
        span = (int(self.start[b]) - lo) % T or T
        cuts = []
        for ka, kb, s_in, s_out in chords:
            side_a = (pa - ka) % L < (kb - ka) % L
            side_b = (pb - ka) % L < (kb - ka) % L
            if side_a != side_b:
                r0 = (self.rank[s_in] - lo) % T
                r1 = (self.rank[s_out] - lo) % T
                cuts.append((r0, r1))
        cuts.sort()
        best = NEG
        cur = 1
        for r0, r1 in cuts:
            if r0 > cur:
                best = max(best, int(circular_max(self.table, T, lo + cur, lo + r0 - 1)))
            cur = max(cur, r1 + 1)
        if span > cur:
            best = max(best, int(circular_max(self.table, T, lo + cur, lo + span - 1)))
        return best

    def scores(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if not self.chords:
            return plain_scores(self.table, self.size, self.start, self.stop, a, b)
        return np.array([self.score(int(x), int(y)) for x, y in zip(a, b)], dtype=np.int64)


class MaxStructure:
    def __init__(self, g, piece, t0, w, walks):
        parent = getattr(t0, "parent_dart", t0)
        root = getattr(t0, "root", None)
        if root is None:
            root = int(np.flatnonzero(np.asarray(parent) < 0)[0])
        self.tour = TourMax(g, piece, parent, root, w)
        self.graph = piece.graph if piece is not None else g
        self.walks, self.flat, self.offsets = _as_arrays(walks)
        _check_paths(self.graph, self.walks)
        pa, pb = [], []
        for a in self.walks:
            pa.append(a[:-1])
            pb.append(a[1:])
        if pa:
            pa, pb = np.concatenate(pa), np.concatenate(pb)
        # adjacent-pair scores; walk i occupies offsets[i] - i .. offsets[i+1] - i - 2
        self.pair = self.tour.scores(pa, pb) if len(pa) else np.zeros(0, dtype=np.int64)
        self.table = build_table(self.pair)

    def piece_max(self, r: WalkRef) -> int:
        s = self.offsets[r.walk_index] - r.walk_index
        return int(range_max(self.table, s + r.start_index, s + r.end_index - 1))


def build_max(g, piece, t0, w, walks) -> MaxStructure:
    return MaxStructure(g, piece, t0, w, walks)


def query_max(m: MaxStructure, gamma) -> int:
    """Largest weight inside a clockwise star-shaped walk (NEG when empty)."""
    if not gamma:
        return m.tour.best
    _validate(m.graph, m.walks, gamma)
    best = NEG
    k = len(gamma)
    for t in range(k):
        r = gamma[t]
        best = max(best, m.piece_max(r))
        nxt = gamma[(t + 1) % k]
        a = int(m.walks[r.walk_index][r.end_index])
        b = int(m.walks[nxt.walk_index][nxt.start_index])
        best = max(best, m.tour.score(a, b))
    return best


def is_star_shaped(g: EmbeddedGraph, t0, gamma: DualWalk) -> bool:
    """Interior contains the root and is closed under taking tree parents."""
    parent = np.asarray(getattr(t0, "parent_dart", t0))
    inside = enclosed_vertices(g, gamma)
    if not inside:
        return False
    for v in inside:
        d = parent[v]
        if d >= 0 and int(g.tail[d]) not in inside:
            return False
    root = getattr(t0, "root", None)
    if root is None:
        root = int(np.flatnonzero(parent < 0)[0])
    return root in inside
