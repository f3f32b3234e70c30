"""Combinatorial plane graphs: darts, rotations, faces, duals and walks.

Conventions used across the package:

* darts come in reversal pairs ``(2i, 2i + 1)``; ``rev(d) == d ^ 1``;
* ``rotation[v]`` lists the darts leaving ``v`` in clockwise order;
* the face successor of ``d`` is the clockwise successor of ``rev(d)`` at the
  head of ``d``, so every orbit traces the face on the left of its darts and
  bounded faces are traversed counterclockwise;
* the dual dart of ``d`` has the same id, runs from the face left of ``d`` to
  the face right of ``d`` and has the tail of ``d`` on its right;
* a clockwise dual walk keeps its interior on the right.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    CrossingWalk,
    DisconnectedGraph,
    DuplicateDart,
    EulerViolation,
    InvalidLength,
    InvalidWalk,
)

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)


def _checked(value: int) -> int:
    if value > INT64_MAX or value < INT64_MIN:
        raise OverflowError(f"length component {value} leaves the int64 range")
    return value


@dataclass(frozen=True, order=True)
class ExactLength:
    """An integer length plus an integer multiple of a symbolic infinitesimal."""

    base: int
    eps: int = 0

    def __post_init__(self) -> None:
        for part in (self.base, self.eps):
            if isinstance(part, bool) or not isinstance(part, (int, np.integer)):
                raise InvalidLength(
                    f"length components must be integers, got {part!r}; "
                    "scale rational inputs to a common denominator first"
                )
        object.__setattr__(self, "base", _checked(int(self.base)))
        object.__setattr__(self, "eps", _checked(int(self.eps)))

    def __add__(self, other: "ExactLength") -> "ExactLength":
        return ExactLength(self.base + other.base, self.eps + other.eps)

    def __sub__(self, other: "ExactLength") -> "ExactLength":
        return ExactLength(self.base - other.base, self.eps - other.eps)

    def __neg__(self) -> "ExactLength":
        return ExactLength(-self.base, -self.eps)

    def __repr__(self) -> str:
        return f"ExactLength({self.base}, {self.eps})" if self.eps else f"ExactLength({self.base})"


# Distinguished minimum used as the value of an empty maximum. It is never the
# result of arithmetic on real lengths because real lengths stay far away
# from the int64 floor.
NEG_INF = ExactLength(INT64_MIN, INT64_MIN)


@dataclass(frozen=True)
class DualGraph:
    face_count: int
    dual_tail: np.ndarray  # face left of each dart
    dual_head: np.ndarray  # face right of each dart
    outer_face: int
    orbits: tuple


@dataclass(frozen=True)
class DualWalk:
    arcs: tuple
    clockwise: bool = True

    def reversed(self) -> "DualWalk":
        return DualWalk(tuple(a ^ 1 for a in reversed(self.arcs)), not self.clockwise)

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class TreeCotree:
    root: int
    tree: frozenset
    cotree: frozenset
    parent_dart: np.ndarray  # dart entering each vertex from its parent, -1 at the root


@dataclass(eq=False)
class EmbeddedGraph:
    """Validated plane multigraph. Treat instances as immutable."""

    n: int
    tail: np.ndarray
    head: np.ndarray
    rotation: tuple
    base: np.ndarray
    eps: np.ndarray
    rot_next: np.ndarray = field(repr=False)
    rot_prev: np.ndarray = field(repr=False)
    face_of: np.ndarray = field(repr=False)
    orbits: tuple = field(repr=False)
    orbit_pos: np.ndarray = field(repr=False)
    outer_face: int = 0

    @property
    def num_darts(self) -> int:
        return len(self.tail)

    @property
    def num_edges(self) -> int:
        return len(self.tail) // 2

    @property
    def num_faces(self) -> int:
        return len(self.orbits)

    def length(self, d: int) -> ExactLength:
        return ExactLength(int(self.base[d]), int(self.eps[d]))

    def dual_tail(self, d: int) -> int:
        return int(self.face_of[d])

    def dual_head(self, d: int) -> int:
        return int(self.face_of[d ^ 1])

    def face_next(self, d: int) -> int:
        return int(self.rot_next[d ^ 1])

    def dual(self) -> DualGraph:
        return trace_faces(self)

    def with_lengths(self, base: np.ndarray, eps: np.ndarray) -> "EmbeddedGraph":
        """Same embedding, new lengths (arrays are copied)."""
        return EmbeddedGraph(
            n=self.n, tail=self.tail, head=self.head, rotation=self.rotation,
            base=np.array(base, dtype=np.int64), eps=np.array(eps, dtype=np.int64),
            rot_next=self.rot_next, rot_prev=self.rot_prev, face_of=self.face_of,
            orbits=self.orbits, orbit_pos=self.orbit_pos, outer_face=self.outer_face,
        )

    def with_outer_face(self, face: int) -> "EmbeddedGraph":
        g = self.with_lengths(self.base, self.eps)
        g.outer_face = int(face)
        return g

    def same_as(self, other: "EmbeddedGraph") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.tail, other.tail)
            and np.array_equal(self.head, other.head)
            and self.rotation == other.rotation
            and np.array_equal(self.base, other.base)
            and np.array_equal(self.eps, other.eps)
            and self.outer_face == other.outer_face
        )


def build_embedded_graph(
    vertices: int,
    darts: Sequence[tuple],
    rotation: Sequence[Sequence[int]],
    lengths: Sequence,
    outer_dart: int | None = None,
    eps: Sequence[int] | None = None,
) -> EmbeddedGraph:
    """Validate a rotation system and trace its faces.

    ``darts[2i]`` and ``darts[2i+1]`` must be reversals of each other.
    ``lengths`` holds one integer (or ExactLength) per dart. The outer face is
    the face left of ``outer_dart``; without it the longest face is used.
    """
    n = int(vertices)
    m2 = len(darts)
    if n <= 0:
        raise DisconnectedGraph("a graph needs at least one vertex")
    if m2 % 2:
        raise DuplicateDart("dart count must be even (reversal pairs)")
    tail = np.empty(m2, dtype=np.int64)
    head = np.empty(m2, dtype=np.int64)
    for d, (u, v) in enumerate(darts):
        if not (0 <= u < n and 0 <= v < n):
            raise DuplicateDart(f"dart {d} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise DuplicateDart(f"dart {d} is a self-loop; loops are not supported")
        tail[d], head[d] = u, v
    for d in range(0, m2, 2):
        if tail[d] != head[d + 1] or head[d] != tail[d + 1]:
            raise DuplicateDart(f"darts {d} and {d + 1} are not reversals of each other")

    if len(lengths) != m2:
        raise InvalidLength(f"expected {m2} lengths, got {len(lengths)}")
    base = np.empty(m2, dtype=np.int64)
    eps_arr = np.zeros(m2, dtype=np.int64)
    for d, lam in enumerate(lengths):
        if isinstance(lam, ExactLength):
            base[d], eps_arr[d] = lam.base, lam.eps
        else:
            base[d] = ExactLength(lam).base
    if eps is not None:
        eps_arr[:] = [ExactLength(0, e).eps for e in eps]

    if len(rotation) != n:
        raise DuplicateDart(f"expected {n} rotation lines, got {len(rotation)}")
    seen = np.zeros(m2, dtype=bool)
    rot_next = np.full(m2, -1, dtype=np.int64)
    rot_prev = np.full(m2, -1, dtype=np.int64)
    rot = []
    for v, cyc in enumerate(rotation):
        cyc = tuple(int(d) for d in cyc)
        for d in cyc:
            if not 0 <= d < m2:
                raise DuplicateDart(f"rotation of {v} names unknown dart {d}")
            if seen[d]:
                raise DuplicateDart(f"dart {d} appears twice in the rotation system")
            if tail[d] != v:
                raise DuplicateDart(f"dart {d} listed at {v} but leaves {tail[d]}")
            seen[d] = True
        k = len(cyc)
        for i, d in enumerate(cyc):
            rot_next[d] = cyc[(i + 1) % k]
            rot_prev[d] = cyc[(i - 1) % k]
        rot.append(cyc)
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0])
        raise DuplicateDart(f"dart {missing} is missing from the rotation system")

    _check_connected(n, tail, head)

    face_of, orbits, orbit_pos = _trace(tail, rot_next)
    f = len(orbits)
    if m2 == 0:
        if n != 1:
            raise DisconnectedGraph("edgeless graph with more than one vertex")
        f = 1  # the single face around an isolated vertex
    if n - m2 // 2 + f != 2:
        raise EulerViolation(
            f"V - E + F = {n} - {m2 // 2} + {f} != 2; the rotation system is not planar"
        )
    if m2 == 0:
        outer = 0
    elif outer_dart is None:
        outer = max(range(f), key=lambda i: (len(orbits[i]), -i))
    else:
        outer = int(face_of[outer_dart])
    return EmbeddedGraph(
        n=n, tail=tail, head=head, rotation=tuple(rot), base=base, eps=eps_arr,
        rot_next=rot_next, rot_prev=rot_prev, face_of=face_of, orbits=orbits,
        orbit_pos=orbit_pos, outer_face=outer,
    )


def _check_connected(n: int, tail: np.ndarray, head: np.ndarray) -> None:
    adj = [[] for _ in range(n)]
    for u, v in zip(tail.tolist(), head.tolist()):
        adj[u].append(v)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    if not all(seen):
        raise DisconnectedGraph(f"vertex {seen.index(False)} is unreachable from vertex 0")


def _trace(tail: np.ndarray, rot_next: np.ndarray):
    m2 = len(tail)
    face_of = np.full(m2, -1, dtype=np.int64)
    orbit_pos = np.full(m2, -1, dtype=np.int64)
    orbits = []
    nxt = rot_next[np.arange(m2) ^ 1]
    for start in range(m2):
        if face_of[start] >= 0:
            continue
        fid = len(orbits)
        orbit = []
        d = start
        while face_of[d] < 0:
            face_of[d] = fid
            orbit_pos[d] = len(orbit)
            orbit.append(d)
            d = int(nxt[d])
        orbits.append(np.array(orbit, dtype=np.int64))
    return face_of, tuple(orbits), orbit_pos


def trace_faces(g: EmbeddedGraph) -> DualGraph:
    """Dual graph view: each dart is crossed by the dual dart of the same id."""
    return DualGraph(
        face_count=g.num_faces,
        dual_tail=g.face_of.copy(),
        dual_head=g.face_of[np.arange(g.num_darts) ^ 1],
        outer_face=g.outer_face,
        orbits=g.orbits,
    )


def check_closed(g: EmbeddedGraph, arcs: Sequence[int]) -> None:
    k = len(arcs)
    for i, a in enumerate(arcs):
        if not 0 <= a < g.num_darts:
            raise InvalidWalk(f"arc {a} is not a dart of the graph")
        b = arcs[(i + 1) % k]
        if g.face_of[a ^ 1] != g.face_of[b]:
            raise InvalidWalk(f"arcs {a} and {b} do not share a dual vertex")


def crossing_levels(g: EmbeddedGraph, arcs: Iterable[int]) -> np.ndarray:
    """Winding level of every vertex relative to vertex 0.

    Crossing the dual of ``u -> v`` while keeping ``u`` on the right makes
    ``u`` one level deeper than ``v``; levels are propagated along a BFS tree
    and cross-checked on every edge.
    """
    net = np.zeros(g.num_darts, dtype=np.int64)
    for a in arcs:
        net[a] += 1
        net[a ^ 1] -= 1
    level = np.full(g.n, np.iinfo(np.int64).min, dtype=np.int64)
    level[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for d in g.rotation[u]:
            v = int(g.head[d])
            if level[v] == np.iinfo(np.int64).min:
                level[v] = level[u] - net[d]
                queue.append(v)
    bad = level[g.tail] - level[g.head] != net
    if bad.any():
        raise InvalidWalk("the walk is not closed: crossing counts are inconsistent")
    return level


def enclosed_vertices(g: EmbeddedGraph, w: DualWalk) -> frozenset:
    """Vertices inside a non-crossing dual walk, by crossing parity."""
    check_closed(g, w.arcs)
    level = crossing_levels(g, w.arcs)
    lo, hi = int(level.min()), int(level.max())
    if hi - lo > 1:
        raise CrossingWalk("the walk winds more than once around some vertex")
    if not is_non_crossing(g, w):
        raise CrossingWalk("two passages of the walk cross inside a face")
    if lo == hi:
        return frozenset() if w.clockwise else frozenset(range(g.n))
    return frozenset(np.flatnonzero(level == hi).tolist())


def is_non_crossing(g: EmbeddedGraph, w: DualWalk) -> bool:
    """True when no two passages through a common face interleave.

    A passage through face f enters over dart ``a`` and leaves over dart
    ``b``; on the orbit of f it is the chord between the positions of
    ``rev(a)`` and ``b``. Passages sharing an endpoint can always be pulled
    apart and count as disjoint.
    """
    arcs = w.arcs
    k = len(arcs)
    if k == 0:
        return True
    chords: dict = {}
    for i in range(k):
        a, b = arcs[i], arcs[(i + 1) % k]
        f = int(g.face_of[b])
        chords.setdefault(f, []).append((int(g.orbit_pos[a ^ 1]), int(g.orbit_pos[b])))
    for f, lst in chords.items():
        if len(lst) < 2:
            continue
        size = len(g.orbits[f])
        for i in range(len(lst)):
            p0, p1 = lst[i]
            for j in range(i + 1, len(lst)):
                q0, q1 = lst[j]
                if len({p0, p1, q0, q1}) < 4:
                    continue
                a = (q0 - p0) % size
                b = (q1 - p0) % size
                c = (p1 - p0) % size
                if (a < c) != (b < c):
                    return False
    return True


def boundary_walks(g: EmbeddedGraph, inside: Iterable[int]) -> list:
    """Clockwise dual walks around a vertex set, stitched face by face.

    Each walk leaves a face over the first inside-to-outside dart that
    follows its entry on the face orbit. The walks together cross exactly
    the edges between ``inside`` and its complement.
    """
    mark = np.zeros(g.n, dtype=bool)
    mark[list(inside)] = True
    cut = mark[g.tail] & ~mark[g.head]
    used = np.zeros(g.num_darts, dtype=bool)
    walks = []
    for start in np.flatnonzero(cut).tolist():
        if used[start]:
            continue
        arcs = []
        d = start
        while not used[d]:
            used[d] = True
            arcs.append(d)
            e = int(g.rot_next[d])  # face successor of rev(d)
            while not cut[e]:
                e = int(g.rot_next[e ^ 1])
            d = e
        if d != start:
            raise InvalidWalk("boundary stitching did not close up")
        walks.append(DualWalk(tuple(arcs), True))
    return walks


def tree_cotree(g: EmbeddedGraph, root: int) -> TreeCotree:
    """BFS spanning tree from ``root`` and the dual spanning tree of the rest."""
    if not 0 <= root < g.n:
        raise DisconnectedGraph(f"root {root} is not a vertex")
    parent = np.full(g.n, -1, dtype=np.int64)
    seen = np.zeros(g.n, dtype=bool)
    seen[root] = True
    queue = deque([root])
    tree = set()
    while queue:
        u = queue.popleft()
        for d in g.rotation[u]:
            v = int(g.head[d])
            if not seen[v]:
                seen[v] = True
                parent[v] = d
                tree.add(d >> 1)
                queue.append(v)
    if not seen.all():
        raise DisconnectedGraph("graph is disconnected")
    cotree = frozenset(range(g.num_edges)) - frozenset(tree)
    return TreeCotree(root=root, tree=frozenset(tree), cotree=cotree, parent_dart=parent)


def euler_characteristic(g: EmbeddedGraph) -> int:
    return g.n - g.num_edges + g.num_faces


class RotationBuilder:
    """Mutable rotation system used by generators and the triangulator."""

    def __init__(self, n: int = 0):
        self.darts: list = []
        self.lengths: list = []
        self.eps: list = []
        self.rot: list = [[] for _ in range(n)]

    @classmethod
    def from_graph(cls, g: EmbeddedGraph) -> "RotationBuilder":
        b = cls(g.n)
        b.darts = list(zip(g.tail.tolist(), g.head.tolist()))
        b.lengths = g.base.tolist()
        b.eps = g.eps.tolist()
        b.rot = [list(c) for c in g.rotation]
        return b

    @property
    def n(self) -> int:
        return len(self.rot)

    def add_vertex(self) -> int:
        self.rot.append([])
        return len(self.rot) - 1

    def _insert(self, v: int, d: int, after) -> None:
        cyc = self.rot[v]
        if after is None:
            cyc.append(d)
        else:
            cyc.insert(cyc.index(after) + 1, d)

    def add_edge(self, u: int, v: int, after_u=None, after_v=None,
                 length_uv: int = 1, length_vu: int | None = None) -> int:
        """Add ``u -> v`` and its reversal; each lands clockwise right after the
        given dart at its tail (or at the end of the rotation). Returns the
        id of ``u -> v``."""
        d = len(self.darts)
        self.darts += [(u, v), (v, u)]
        self.lengths += [length_uv, length_uv if length_vu is None else length_vu]
        self.eps += [0, 0]
        self._insert(u, d, after_u)
        self._insert(v, d + 1, after_v)
        return d

    def face_next(self, d: int) -> int:
        cyc = self.rot[self.darts[d ^ 1][0]]
        return cyc[(cyc.index(d ^ 1) + 1) % len(cyc)]

    def orbit(self, d: int) -> list:
        out = [d]
        e = self.face_next(d)
        while e != d:
            out.append(e)
            e = self.face_next(e)
        return out

    def build(self, outer_dart=None) -> EmbeddedGraph:
        return build_embedded_graph(self.n, self.darts, self.rot, self.lengths,
                                    outer_dart=outer_dart, eps=self.eps)


def embed_from_coordinates(points: Sequence[tuple], edges: Sequence[tuple],
                           lengths: Sequence | None = None,
                           outer_dart: int | None = None) -> EmbeddedGraph:
    """Rotation system of a straight-line drawing; clockwise means decreasing angle.

    ``edges`` are undirected pairs; edge i yields darts 2i (u->v) and 2i+1.
    ``lengths`` optionally gives a (forward, backward) pair per edge.
    """
    n = len(points)
    darts = []
    lens = []
    for i, (u, v) in enumerate(edges):
        darts += [(u, v), (v, u)]
        if lengths is None:
            lens += [1, 1]
        else:
            lf, lb = lengths[i]
            lens += [lf, lb]
    out = [[] for _ in range(n)]
    for d, (u, v) in enumerate(darts):
        (x0, y0), (x1, y1) = points[u], points[v]
        out[u].append((-np.arctan2(y1 - y0, x1 - x0), d))
    rot = [[d for _, d in sorted(lst)] for lst in out]
    return build_embedded_graph(n, darts, rot, lens, outer_dart=outer_dart)


@dataclass(eq=False)
class SubEmbedding:
    """An edge-induced subgraph with the embedding inherited from its parent.

    Local edge i is parent edge ``edges[i]``, so local darts keep their
    reversal pairing and orientation.
    """

    parent: EmbeddedGraph
    graph: EmbeddedGraph
    vert: np.ndarray    # local vertex -> parent vertex
    vloc: np.ndarray    # parent vertex -> local vertex or -1
    dart: np.ndarray    # local dart -> parent dart
    dloc: np.ndarray    # parent dart -> local dart or -1
    region: np.ndarray  # parent face -> local face containing it
    holes: tuple        # local faces that are not faces of the parent

    def is_hole(self, f: int) -> bool:
        return f in self.holes


def embed_subgraph(g: EmbeddedGraph, edge_ids: Iterable[int]) -> SubEmbedding:
    edges = np.array(sorted(set(int(e) for e in edge_ids)), dtype=np.int64)
    if len(edges) == 0:
        raise DisconnectedGraph("a piece needs at least one edge")
    pdarts = np.empty(2 * len(edges), dtype=np.int64)
    pdarts[0::2] = 2 * edges
    pdarts[1::2] = 2 * edges + 1
    dloc = np.full(g.num_darts, -1, dtype=np.int64)
    dloc[pdarts] = np.arange(len(pdarts))
    verts = np.unique(np.concatenate([g.tail[pdarts], g.head[pdarts]]))
    vloc = np.full(g.n, -1, dtype=np.int64)
    vloc[verts] = np.arange(len(verts))
    darts = list(zip(vloc[g.tail[pdarts]].tolist(), vloc[g.head[pdarts]].tolist()))
    rot = [[int(dloc[d]) for d in g.rotation[v] if dloc[d] >= 0] for v in verts.tolist()]

    # parent faces glued across edges that the piece does not own
    foreign = np.flatnonzero(dloc[0::2] < 0)
    glue = coo_matrix((np.ones(len(foreign)), (g.face_of[2 * foreign], g.face_of[2 * foreign + 1])),
                      shape=(g.num_faces, g.num_faces))
    _, comp = connected_components(glue, directed=False)
    hits = np.flatnonzero(comp[g.face_of[pdarts]] == comp[g.outer_face])
    outer_dart = int(dloc[pdarts[hits[0]]]) if len(hits) else None
    sub = build_embedded_graph(len(verts), darts, rot, g.base[pdarts].tolist(),
                               outer_dart=outer_dart, eps=g.eps[pdarts].tolist())
    label = np.full(g.num_faces, -1, dtype=np.int64)
    label[comp[g.face_of[pdarts]]] = sub.face_of[dloc[pdarts]]
    region = label[comp]
    members = np.bincount(region, minlength=sub.num_faces)
    _, first_face = np.unique(region, return_index=True)
    holes = []
    for f in range(sub.num_faces):
        if members[f] != 1 or (dloc[g.orbits[first_face[f]]] < 0).any():
            holes.append(f)
    return SubEmbedding(g, sub, verts, vloc, pdarts, dloc, region, tuple(holes))
