"""Random closed dual walks with a known interior, for the aggregation checks."""
from dataclasses import dataclass

import numpy as np

from planar_stats.aggregation import WalkRef, bfs_order
from planar_stats.generators import grid, random_lengths, random_triangulation
from planar_stats.planar_core import EmbeddedGraph, boundary_walks
from planar_stats.shortest_paths import DistanceEngine, initial_potential, perturb, sssp

KINDS = ("upward", "voronoi", "fundamental", "grown")


@dataclass
class WalkCase:
    g: EmbeddedGraph
    kind: str
    root: int
    inside: frozenset
    arcs: tuple
    tree: object  # shortest-path tree from root

    def split(self, rng, max_parts=4):
        """Rotate the walk to a random start and cut it into consecutive WalkRefs."""
        L = len(self.arcs)
        shift = int(rng.integers(L))
        arcs = self.arcs[shift:] + self.arcs[:shift]
        k = int(rng.integers(1, min(L, max_parts) + 1))
        cuts = sorted(rng.choice(np.arange(1, L), size=k - 1, replace=False).tolist()) if k > 1 else []
        bounds = [0] + cuts + [L]
        return arcs, [WalkRef(0, bounds[i], bounds[i + 1] - 1) for i in range(k)]


def _graph(rng, seed):
    if rng.random() < 0.5:
        g = grid(int(rng.integers(2, 9)), int(rng.integers(3, 9)))
    else:
        g = random_triangulation(int(rng.integers(4, 90)), seed)
    return perturb(random_lengths(g, 1, 9, seed), seed)


def _upward(g, sp, rng):
    S = {sp.root}
    for v in rng.permutation(g.n)[: int(rng.integers(1, g.n + 1))].tolist():
        while v not in S:
            S.add(v)
            v = int(g.tail[sp.parent_dart[v]])
    return S


def _voronoi(g, root, rng):
    others = [int(v) for v in rng.choice(g.n, size=min(g.n - 1, int(rng.integers(1, 5))), replace=False)
              if v != root]
    sites = [root] + others
    eng = DistanceEngine(g, initial_potential(g))
    w = [0] + rng.integers(-3, 4, size=len(others)).tolist()
    rows = []
    for s, ws in zip(sites, w):
        db, de, _ = eng.from_source(s)
        rows.append((db + ws, de))
    base = np.stack([r[0] for r in rows])
    eps = np.stack([r[1] for r in rows])
    owner = [min(range(len(sites)), key=lambda i: (base[i, v], eps[i, v])) for v in range(g.n)]
    return {v for v in range(g.n) if owner[v] == 0}


def _fundamental(g, root, rng):
    order, parent = bfs_order(g, root)
    if g.n < 2:
        return {root}
    cut = int(rng.choice(order[1:]))
    below = {cut}
    for v in order.tolist():
        d = parent[v]
        if d >= 0 and int(g.tail[d]) in below:
            below.add(v)
    return set(range(g.n)) - below


def _grown(g, root, rng):
    S = {root}
    target = int(rng.integers(1, g.n + 1))
    frontier = [root]
    while frontier and len(S) < target:
        u = frontier.pop(int(rng.integers(len(frontier))))
        for d in g.rotation[u]:
            v = int(g.head[d])
            if v not in S and rng.random() < 0.7:
                S.add(v)
                frontier.append(v)
    return S


def random_case(rng, kind=None, tries=50):
    """A graph, a root, a vertex set containing it, and its single clockwise boundary walk."""
    for _ in range(tries):
        seed = int(rng.integers(1 << 30))
        g = _graph(rng, seed)
        root = int(rng.integers(g.n))
        sp = sssp(g, initial_potential(g), root)
        k = kind or KINDS[int(rng.integers(len(KINDS)))]
        if k == "upward":
            S = _upward(g, sp, rng)
        elif k == "voronoi":
            S = _voronoi(g, root, rng)
        elif k == "fundamental":
            S = _fundamental(g, root, rng)
        else:
            S = _grown(g, root, rng)
        walks = boundary_walks(g, S)
        if len(walks) != 1 or not walks[0].arcs:
            continue
        return WalkCase(g, k, root, frozenset(S), tuple(walks[0].arcs), sp)
    raise RuntimeError("no single-walk case found")
