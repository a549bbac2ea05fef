"""Deterministic constructions of the two scale-free families and S++.

Both families start from a quadrangle whose vertices are the hubs v1..v4.
The canonical construction merges four copies of the previous generation
at their hubs; the edge-replacement construction exists for
cross-validation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

from .errors import GenerationTooLarge
from .graph import Edge, Graph, VertexMeta, complete_graph, subdivided_line

DEFAULT_MAX_G = 10
MAX_G_ENV = "MATCHFAB_MAX_G"

# Hub layout of the generation-1 quadrangle, ids 0..3 = v1..v4.
# Fractal: v1,v2 diagonal (and v3,v4 diagonal). Non-fractal: v1,v4 diagonal.
_FRACTAL_BASE: list[Edge] = [(0, 2), (1, 2), (1, 3), (0, 3)]
_NONFRACTAL_BASE: list[Edge] = [(0, 1), (0, 2), (1, 3), (2, 3)]
# Arcs of H_1^e: v1->v2, v1->v3, v4->v2, v3->v4.
_NONFRACTAL_BASE_ARCS: list[Edge] = [(0, 1), (0, 2), (3, 1), (2, 3)]

# new hub role -> the two (copy, old role) pairs merged into it; copies 0..3
_FRACTAL_MERGE = {
    "v1": ((0, "v1"), (3, "v1")),
    "v2": ((1, "v2"), (2, "v1")),
    "v3": ((0, "v2"), (1, "v1")),
    "v4": ((2, "v2"), (3, "v2")),
}
_NONFRACTAL_MERGE = {
    "v1": ((0, "v1"), (3, "v1")),
    "v4": ((1, "v2"), (2, "v1")),
    "v3": ((0, "v2"), (1, "v1")),
    "v2": ((2, "v2"), (3, "v2")),
}


def generation_cap() -> int:
    raw = os.environ.get(MAX_G_ENV)
    return int(raw) if raw else DEFAULT_MAX_G


def _check_generation(g: int, max_g: int | None) -> None:
    if g < 1:
        raise ValueError(f"generation must be >= 1, got {g}")
    cap = generation_cap() if max_g is None else max_g
    if g > cap:
        raise GenerationTooLarge(g, cap)


@dataclass(frozen=True, eq=False)
class OrientedGraph:
    """A graph plus one direction per edge.

    ``forward[k]`` is True when the k-th canonical edge ``(u, v)``, ``u < v``,
    is directed ``u -> v``.
    """

    base: Graph
    forward: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.forward) != self.base.num_edges:
            raise ValueError("need exactly one direction per edge")

    @classmethod
    def from_arcs(cls, base: Graph, arcs: list[Edge]) -> OrientedGraph:
        tails: dict[Edge, int] = {}
        for t, h in arcs:
            key = (t, h) if t < h else (h, t)
            if key in tails:
                raise ValueError(f"edge {key} oriented twice")
            if not base.has_edge(t, h):
                raise ValueError(f"arc {t}->{h} is not an edge")
            tails[key] = t
        if len(tails) != base.num_edges:
            raise ValueError("orientation does not cover every edge")
        return cls(base, tuple(tails[e] == e[0] for e in base.edges()))

    @cached_property
    def _tail(self) -> dict[Edge, int]:
        return {e: (e[0] if f else e[1]) for e, f in zip(self.base.edges(), self.forward)}

    def arcs(self) -> list[Edge]:
        """Directed edges ``(tail, head)`` in canonical edge order."""
        return [(u, v) if f else (v, u) for (u, v), f in zip(self.base.edges(), self.forward)]

    def direction(self, u: int, v: int) -> int:
        """+1 if ``u -> v``, -1 if ``v -> u``, 0 if not adjacent."""
        tail = self._tail.get((u, v) if u < v else (v, u))
        if tail is None:
            return 0
        return 1 if tail == u else -1


def _quadrangle(base: list[Edge], family: str) -> Graph:
    meta = [VertexMeta(1, r) for r in ("v1", "v2", "v3", "v4")]
    return Graph.from_edges(4, base, meta, family)


def _amalgamate(
    prev: Graph,
    merge: dict[str, tuple[tuple[int, str], tuple[int, str]]],
    arcs: list[Edge] | None = None,
) -> tuple[Graph, list[Edge] | None]:
    m = prev.n
    hubs = prev.hubs()
    rep = list(range(4 * m))
    role_of: dict[int, str] = {}
    for role, ((ca, ra), (cb, rb)) in merge.items():
        a, b = ca * m + hubs[ra], cb * m + hubs[rb]
        lo, hi = min(a, b), max(a, b)
        rep[hi] = lo
        role_of[lo] = role
    keep = [x for x in range(4 * m) if rep[x] == x]
    rank = {x: i for i, x in enumerate(keep)}
    new_id = [rank[rep[x]] for x in range(4 * m)]

    prev_edges = list(prev.edges())
    edges = [(new_id[c * m + u], new_id[c * m + v]) for c in range(4) for u, v in prev_edges]
    meta = []
    for x in keep:
        if x in role_of:
            meta.append(VertexMeta(1, role_of[x]))
        else:
            meta.append(VertexMeta(prev.meta[x % m].gen_iteration + 1, None))
    graph = Graph.from_edges(len(keep), edges, meta, prev.family_tag)
    new_arcs = None
    if arcs is not None:
        new_arcs = [(new_id[c * m + t], new_id[c * m + h]) for c in range(4) for t, h in arcs]
    return graph, new_arcs


def gen_fractal(g: int, max_g: int | None = None) -> Graph:
    """F_g by merging four copies of F_{g-1} at their hubs."""
    _check_generation(g, max_g)
    graph = _quadrangle(_FRACTAL_BASE, "fractal")
    for _ in range(g - 1):
        graph, _ = _amalgamate(graph, _FRACTAL_MERGE)
    return graph


def gen_nonfractal(g: int, max_g: int | None = None) -> Graph:
    """H_g by merging four copies of H_{g-1} at their hubs."""
    return gen_nonfractal_oriented(g, max_g).base


def gen_nonfractal_oriented(g: int, max_g: int | None = None) -> OrientedGraph:
    """H_g together with its recursive orientation H_g^e."""
    _check_generation(g, max_g)
    graph = _quadrangle(_NONFRACTAL_BASE, "nonfractal")
    arcs: list[Edge] | None = list(_NONFRACTAL_BASE_ARCS)
    for _ in range(g - 1):
        graph, arcs = _amalgamate(graph, _NONFRACTAL_MERGE, arcs)
    assert arcs is not None
    return OrientedGraph.from_arcs(graph, arcs)


def _edge_replacement(g: int, base: list[Edge], family: str, keep_edge: bool) -> Graph:
    n = 4
    edges = list(base)
    gens = [1, 1, 1, 1]
    for it in range(2, g + 1):
        new_edges = []
        for u, v in sorted((min(e), max(e)) for e in edges):
            w1, w2 = n, n + 1
            n += 2
            gens += [it, it]
            if keep_edge:
                # u, v stay adjacent: u - v - w1 - w2 - u
                new_edges += [(u, v), (v, w1), (w1, w2), (u, w2)]
            else:
                # u, v become diagonal: u - w1 - v - w2 - u
                new_edges += [(u, w1), (v, w1), (v, w2), (u, w2)]
        edges = new_edges
    roles = ("v1", "v2", "v3", "v4")
    meta = [VertexMeta(gens[v], roles[v] if v < 4 else None) for v in range(n)]
    return Graph.from_edges(n, edges, meta, family)


def gen_fractal_edge_replacement(g: int, max_g: int | None = None) -> Graph:
    """F_g by replacing every edge with a quadrangle having its ends diagonal."""
    _check_generation(g, max_g)
    return _edge_replacement(g, _FRACTAL_BASE, "fractal", keep_edge=False)


def gen_nonfractal_edge_replacement(g: int, max_g: int | None = None) -> Graph:
    """H_g by growing a quadrangle on every edge, keeping the edge itself."""
    _check_generation(g, max_g)
    return _edge_replacement(g, _NONFRACTAL_BASE, "nonfractal", keep_edge=True)


def gen_sierpinski_ext(g: int, max_g: int | None = None) -> Graph:
    """Extended Sierpinski graph: ``g - 1`` subdivided-line steps from K4."""
    _check_generation(g, max_g)
    graph = complete_graph(4)
    for _ in range(g - 1):
        graph = subdivided_line(graph)
    return Graph(graph.n, graph.adj, graph.meta, "sierpinski")


def generate(family: str, g: int, max_g: int | None = None) -> Graph:
    if family == "fractal":
        return gen_fractal(g, max_g)
    if family == "nonfractal":
        return gen_nonfractal(g, max_g)
    if family == "sierpinski":
        return gen_sierpinski_ext(g, max_g)
    raise ValueError(f"unknown family {family!r}")


def to_orientation_text(og: OrientedGraph) -> str:
    """Orientation sidecar: one ``tail head`` line per edge."""
    return "".join(f"{t} {h}\n" for t, h in og.arcs())


def parse_orientation(text: str, base: Graph) -> OrientedGraph:
    arcs = []
    for line in text.splitlines():
        if line.strip():
            t, h = line.split()
            arcs.append((int(t), int(h)))
    return OrientedGraph.from_arcs(base, arcs)
