"""Seeded generators for plane graphs with their rotation systems."""
from __future__ import annotations

import math

import numpy as np

from .errors import BadParams, NegativeCycle
from .planar_core import EmbeddedGraph, RotationBuilder, embed_from_coordinates


def grid(rows: int, cols: int) -> EmbeddedGraph:
    """rows x cols grid with unit lengths; vertex (r, c) has id r * cols + c."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise BadParams("grid needs at least two vertices")
    pts = [(c, r) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((r * cols + c, r * cols + c + 1))
    for r in range(rows - 1):
        for c in range(cols):
            edges.append((r * cols + c, (r + 1) * cols + c))
    # dart 1 runs west along the bottom row (or south along a single column),
    # so the unbounded face is on its left
    return embed_from_coordinates(pts, edges, outer_dart=1)


def path(n: int) -> EmbeddedGraph:
    if n < 1:
        raise BadParams("path needs a vertex")
    return embed_from_coordinates([(i, 0) for i in range(n)],
                                  [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> EmbeddedGraph:
    if n < 3:
        raise BadParams("cycle needs three vertices")
    pts = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
    # dart 1 goes clockwise around the polygon, so its left side is outside
    return embed_from_coordinates(pts, [(i, (i + 1) % n) for i in range(n)], outer_dart=1)


def fan(k: int, seed: int, rim_probability: float = 0.5) -> EmbeddedGraph:
    """Hub 0 joined to rim vertices 1..k, plus a random subset of rim edges.

    Every such graph has diameter 2 once k >= 4.
    """
    if k < 3:
        raise BadParams("fan needs at least three rim vertices")
    rng = np.random.default_rng(seed)
    pts = [(0.0, 0.0)] + [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
                          for i in range(k)]
    edges = [(0, i) for i in range(1, k + 1)]
    for i in range(1, k + 1):
        if rng.random() < rim_probability:
            edges.append((i, i % k + 1))
    return embed_from_coordinates(pts, edges)


def random_triangulation(n: int, seed: int, flips: int | None = None) -> EmbeddedGraph:
    """Grow a triangulation by repeated face splits, then apply random edge flips."""
    if n < 3:
        raise BadParams("a triangulation needs at least three vertices")
    rng = np.random.default_rng(seed)
    g0 = embed_from_coordinates([(0, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (2, 0)])
    b = RotationBuilder.from_graph(g0)
    for _ in range(3, n):
        d = int(rng.integers(len(b.darts)))
        a_b, b_c, c_a = b.orbit(d)
        a, bb, c = b.darts[a_b][0], b.darts[b_c][0], b.darts[c_a][0]
        w = b.add_vertex()
        e_a = b.add_edge(w, a, None, c_a ^ 1)
        e_c = b.add_edge(w, c, e_a, b_c ^ 1)
        b.add_edge(w, bb, e_c, a_b ^ 1)
    if flips is None:
        flips = 2 * n
    _random_flips(b, rng, flips)
    return b.build(outer_dart=0)


def _random_flips(b: RotationBuilder, rng, count: int) -> None:
    adjacent = {frozenset(e) for e in b.darts}
    for _ in range(count):
        d = int(rng.integers(len(b.darts))) & ~1
        u, v = b.darts[d]
        if len(b.rot[u]) <= 3 or len(b.rot[v]) <= 3:
            continue
        f1, f2 = b.orbit(d), b.orbit(d ^ 1)
        if len(f1) != 3 or len(f2) != 3:
            continue
        a = b.darts[f1[2]][0]
        c = b.darts[f2[2]][0]
        if a == c or frozenset((a, c)) in adjacent:
            continue
        v_a, u_c = f1[1], f2[1]
        b.rot[u].remove(d)
        b.rot[v].remove(d ^ 1)
        b.darts[d], b.darts[d ^ 1] = (a, c), (c, a)
        b._insert(a, d, v_a ^ 1)
        b._insert(c, d ^ 1, u_c ^ 1)
        adjacent.discard(frozenset((u, v)))
        adjacent.add(frozenset((a, c)))


def random_lengths(g: EmbeddedGraph, lo: int, hi: int, seed: int,
                   directed: bool = True) -> EmbeddedGraph:
    """Independent uniform integer lengths in [lo, hi]; symmetric when not directed."""
    if lo > hi:
        raise BadParams("empty length range")
    rng = np.random.default_rng(seed)
    base = rng.integers(lo, hi + 1, size=g.num_darts, dtype=np.int64)
    if not directed:
        base[1::2] = base[0::2]
    return g.with_lengths(base, np.zeros(g.num_darts, dtype=np.int64))


def negative_lengths(g: EmbeddedGraph, seed: int, fraction: float = 0.1) -> EmbeddedGraph:
    """Directed lengths 1..9, then arcs are turned negative one at a time.

    A candidate arc keeps its negative length only if no negative cycle
    appears; the loop stops once ``fraction`` of all arcs are negative.
    """
    from .shortest_paths import initial_potential

    rng = np.random.default_rng(seed)
    base = rng.integers(1, 10, size=g.num_darts, dtype=np.int64)
    zeros = np.zeros(g.num_darts, dtype=np.int64)
    target = int(round(fraction * g.num_darts))
    made = 0
    for d in rng.permutation(g.num_darts).tolist():
        if made >= target:
            break
        old = base[d]
        base[d] = -int(rng.integers(1, 4))
        try:
            initial_potential(g.with_lengths(base, zeros))
        except NegativeCycle:
            base[d] = old
            continue
        made += 1
    if made < target:
        raise BadParams("could not place enough negative arcs")
    return g.with_lengths(base, zeros)


def gen(kind: str, seed: int = 0, **params) -> EmbeddedGraph:
    """Dispatch used by the CLI: grid, triangulation, fan, path, cycle."""
    if kind == "grid":
        g = grid(int(params.get("rows", 3)), int(params.get("cols", params.get("rows", 3))))
    elif kind == "triangulation":
        g = random_triangulation(int(params.get("n", 50)), seed)
    elif kind == "fan":
        g = fan(int(params.get("n", 8)), seed)
    elif kind == "path":
        g = path(int(params.get("n", 3)))
    elif kind == "cycle":
        g = cycle(int(params.get("n", 4)))
    else:
        raise BadParams(f"unknown generator kind {kind!r}")
    lo, hi = params.get("lo"), params.get("hi")
    if lo is not None or hi is not None:
        g = random_lengths(g, int(lo or 1), int(hi or 9), seed,
                           directed=bool(params.get("directed", True)))
    if params.get("negative"):
        g = negative_lengths(g, seed)
    return g
