"""Text and JSON graph files.

Text layout::

    n m [undirected]
    u v base [eps]          # m lines: darts, or edges when undirected
    v: d1 d2 ... dk         # n lines: clockwise rotation by dart index
    outer: d                # optional: a dart on the outer face

Undirected files list each edge once; edge i becomes darts 2i and 2i+1 with
equal lengths. Directed files list darts in reversal pairs.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import ValidationError
from .planar_core import EmbeddedGraph, build_embedded_graph


def _outer_dart(g: EmbeddedGraph) -> int | None:
    orbit = g.orbits[g.outer_face] if g.num_faces else []
    return int(orbit[0]) if len(orbit) else None


def to_text(g: EmbeddedGraph) -> str:
    lines = [f"{g.n} {g.num_darts}"]
    for d in range(g.num_darts):
        row = f"{int(g.tail[d])} {int(g.head[d])} {int(g.base[d])}"
        if g.eps[d]:
            row += f" {int(g.eps[d])}"
        lines.append(row)
    for v in range(g.n):
        lines.append(f"{v}: " + " ".join(str(int(d)) for d in g.rotation[v]))
    od = _outer_dart(g)
    if od is not None:
        lines.append(f"outer: {od}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> EmbeddedGraph:
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ValidationError("empty graph file")
    head = rows[0].split()
    try:
        n, m = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise ValidationError("header must be 'n m [undirected]'") from None
    undirected = len(head) > 2 and head[2] == "undirected"
    if len(rows) < 1 + m + n:
        raise ValidationError("graph file is truncated")
    darts, base, eps = [], [], []
    for r in rows[1:1 + m]:
        parts = r.split()
        if len(parts) not in (3, 4):
            raise ValidationError(f"bad dart line {r!r}")
        u, v, b = int(parts[0]), int(parts[1]), int(parts[2])
        e = int(parts[3]) if len(parts) == 4 else 0
        if undirected:
            darts += [(u, v), (v, u)]
            base += [b, b]
            eps += [e, e]
        else:
            darts.append((u, v))
            base.append(b)
            eps.append(e)
    rotation = [None] * n
    for r in rows[1 + m:1 + m + n]:
        key, _, rest = r.partition(":")
        v = int(key)
        if not 0 <= v < n:
            raise ValidationError(f"rotation line for unknown vertex {v}")
        rotation[v] = [int(x) for x in rest.split()]
    if any(rot is None for rot in rotation):
        raise ValidationError("a vertex has no rotation line")
    outer = None
    for r in rows[1 + m + n:]:
        key, _, rest = r.partition(":")
        if key.strip() == "outer":
            outer = int(rest)
    return build_embedded_graph(n, darts, rotation, base, outer_dart=outer, eps=eps)


def to_json(g: EmbeddedGraph) -> str:
    return json.dumps({
        "n": g.n,
        "darts": [[int(g.tail[d]), int(g.head[d]), int(g.base[d]), int(g.eps[d])]
                  for d in range(g.num_darts)],
        "rotation": [[int(d) for d in rot] for rot in g.rotation],
        "outer": _outer_dart(g),
    })


def from_json(text: str) -> EmbeddedGraph:
    try:
        obj = json.loads(text)
        darts = [(int(a[0]), int(a[1])) for a in obj["darts"]]
        base = [int(a[2]) for a in obj["darts"]]
        eps = [int(a[3]) if len(a) > 3 else 0 for a in obj["darts"]]
        return build_embedded_graph(int(obj["n"]), darts, obj["rotation"], base,
                                    outer_dart=obj.get("outer"), eps=eps)
    except (KeyError, TypeError, IndexError, json.JSONDecodeError) as exc:
        raise ValidationError(f"malformed JSON graph: {exc}") from None


def read_graph(path) -> EmbeddedGraph:
    text = Path(path).read_text()
    return from_json(text) if text.lstrip().startswith("{") else from_text(text)


def write_graph(g: EmbeddedGraph, path) -> None:
    path = Path(path)
    path.write_text(to_json(g) if path.suffix == ".json" else to_text(g))
