"""Immutable simple graphs and the subdivision / line-graph operators.

Vertices are dense 0-based integers. Neighbor lists are sorted, so the
canonical edge order is ``(u ascending, then v ascending)`` with ``u < v``.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_left
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

HUB_ROLES = ("v1", "v2", "v3", "v4")
FAMILY_TAGS = ("fractal", "nonfractal", "sierpinski", "derived")

Edge = tuple[int, int]


@dataclass(frozen=True)
class VertexMeta:
    gen_iteration: int = 1
    hub_role: str | None = None


_DEFAULT_META = VertexMeta()


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with per-vertex metadata.

    Build instances through :meth:`from_edges`; the constructor expects
    already-canonical adjacency and validates it.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    meta: tuple[VertexMeta, ...]
    family_tag: str | None = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n or len(self.meta) != self.n:
            raise ValueError("adjacency/meta length does not match n")
        if self.family_tag is not None and self.family_tag not in FAMILY_TAGS:
            raise ValueError(f"unknown family tag {self.family_tag!r}")
        for v, nbrs in enumerate(self.adj):
            prev = -1
            for u in nbrs:
                if u <= prev:
                    raise ValueError(f"neighbor list of {v} not strictly increasing")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                prev = u
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if not _contains(self.adj[u], v):
                    raise ValueError(f"edge ({v},{u}) is not symmetric")
        if self.family_tag in ("fractal", "nonfractal"):
            roles = sorted(m.hub_role for m in self.meta if m.hub_role is not None)
            if roles != list(HUB_ROLES):
                raise ValueError(f"expected one vertex per hub role, got {roles}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        meta: Sequence[VertexMeta] | None = None,
        family_tag: str | None = None,
    ) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if v in nbrs[u]:
                raise ValueError(f"parallel edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        if meta is None:
            meta = (_DEFAULT_META,) * n
        return cls(n, adj, tuple(meta), family_tag)

    # -- queries ---------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterator[Edge]:
        """Edges in canonical order."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs[bisect_left(nbrs, u + 1):]:
                yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return _contains(self.adj[u], v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def degree_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    def hubs(self) -> dict[str, int]:
        """Map hub role -> vertex for vertices that carry one."""
        return {m.hub_role: v for v, m in enumerate(self.meta) if m.hub_role is not None}

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            v = queue.popleft()
            for u in self.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    count += 1
                    queue.append(u)
        return count == self.n

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adj[v]:
                    if color[u] == -1:
                        color[u] = 1 - color[v]
                        queue.append(u)
                    elif color[u] == color[v]:
                        return False
        return True

    def same_structure(self, other: Graph) -> bool:
        return self.n == other.n and self.adj == other.adj

    def with_edge(self, u: int, v: int) -> Graph:
        """Copy of this graph with one extra edge (tag becomes ``derived``)."""
        return Graph.from_edges(self.n, [*self.edges(), (u, v)], self.meta, "derived")


def _contains(seq: Sequence[int], x: int) -> bool:
    i = bisect_left(seq, x)
    return i < len(seq) and seq[i] == x


def edge_index(g: Graph) -> dict[Edge, int]:
    """Position of each canonical edge in canonical order."""
    return {e: i for i, e in enumerate(g.edges())}


# -- operators -------------------------------------------------------------


def subdivision(g: Graph) -> Graph:
    """Insert a new vertex on every edge.

    Original vertices keep their ids; the vertex inserted on the k-th
    canonical edge gets id ``n + k``.
    """
    edges = []
    for k, (u, v) in enumerate(g.edges()):
        w = g.n + k
        edges.append((u, w))
        edges.append((w, v))
    m = g.n + len(edges) // 2
    meta = list(g.meta) + [_DEFAULT_META] * (m - g.n)
    return Graph.from_edges(m, edges, meta, "derived")


def line_graph(g: Graph) -> Graph:
    """Line graph; vertex k is the k-th canonical edge of ``g``."""
    index = edge_index(g)
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for (u, v), k in index.items():
        incident[u].append(k)
        incident[v].append(k)
    edges = []
    for ks in incident:
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                edges.append((ks[i], ks[j]))
    return Graph.from_edges(len(index), edges, None, "derived")


def subdivided_line(g: Graph) -> Graph:
    """``line_graph(subdivision(g))``."""
    return line_graph(subdivision(g))


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the complement of ``s``.

    Returns the subgraph and the old-id -> new-id map of kept vertices.
    """
    drop = set(s)
    for v in drop:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in drop]
    relabel = {v: i for i, v in enumerate(keep)}
    adj = tuple(tuple(relabel[u] for u in g.adj[v] if u in relabel) for v in keep)
    meta = tuple(g.meta[v] for v in keep)
    return Graph(len(keep), adj, meta, "derived"), relabel


# -- text formats ------------------------------------------------------------


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with a 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = []
    for row in rows[1:]:
        u, v = int(row[0]), int(row[1])
        if u >= v:
            raise ValueError(f"edge line '{u} {v}' must have u < v")
        edges.append((u, v))
    if len(edges) != m:
        raise ValueError(f"header says {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        role = g.meta[v].hub_role
        lines.append(f'  {v} [label="{role}"];' if role else f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r"^\s*(\d+)\s*(?:\[label=\"(v[1-4])\"\])?\s*;\s*$")
_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;\s*$")


def parse_dot(text: str) -> Graph:
    """Parse the subset of DOT written by :func:`to_dot`."""
    n = 0
    roles: dict[int, str] = {}
    edges = []
    for line in text.splitlines():
        if m := _DOT_EDGE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
        elif m := _DOT_NODE.match(line):
            v = int(m.group(1))
            n = max(n, v + 1)
            if m.group(2):
                roles[v] = m.group(2)
    n = max([n, *(max(e) + 1 for e in edges)])
    meta = [VertexMeta(1, roles.get(v)) for v in range(n)]
    return Graph.from_edges(n, edges, meta)


def to_json_dict(g: Graph) -> dict:
    return {
        "n": g.n,
        "family": g.family_tag,
        "edges": [list(e) for e in g.edges()],
        "gen_iteration": [m.gen_iteration for m in g.meta],
        "hubs": g.hubs(),
    }


def from_json_dict(d: dict) -> Graph:
    n = d["n"]
    roles = {v: r for r, v in d.get("hubs", {}).items()}
    gens = d.get("gen_iteration", [1] * n)
    meta = [VertexMeta(gens[v], roles.get(v)) for v in range(n)]
    return Graph.from_edges(n, d["edges"], meta, d.get("family"))


def to_json(g: Graph) -> str:
    return json.dumps(to_json_dict(g), sort_keys=True)


def from_json(text: str) -> Graph:
    return from_json_dict(json.loads(text))


# -- small named graphs used as fixtures and base cases ----------------------


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])
