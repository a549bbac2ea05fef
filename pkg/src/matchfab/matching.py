"""Maximum matchings (Edmonds' blossom algorithm) and exhaustive counters."""

from __future__ import annotations

import json
import warnings
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded
from .graph import Edge, Graph

DEFAULT_ENUM_CAP = 70


@dataclass(frozen=True)
class Matching:
    edges: frozenset[Edge]

    @classmethod
    def from_pairs(cls, pairs) -> Matching:
        return cls(frozenset((min(u, v), max(u, v)) for u, v in pairs))

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(x for e in self.edges for x in e)

    def is_valid(self, g: Graph) -> bool:
        return len(self.covered) == 2 * self.size and all(g.has_edge(u, v) for u, v in self.edges)

    def is_perfect(self, g: Graph) -> bool:
        return 2 * self.size == g.n

    def is_maximal(self, g: Graph) -> bool:
        cov = self.covered
        return not any(u not in cov and v not in cov for u, v in g.edges())

    def to_json(self) -> str:
        return json.dumps(sorted(list(e) for e in self.edges))


def _greedy(g: Graph, mate: list[int]) -> None:
    # low-degree vertices first leaves fewer free vertices to augment from
    for v in sorted(range(g.n), key=g.degree):
        if mate[v] == -1:
            for u in g.adj[v]:
                if mate[u] == -1:
                    mate[v], mate[u] = u, v
                    break


def maximum_matching(g: Graph) -> Matching:
    """Exact maximum-cardinality matching of a general graph.

    Augmenting-path search with blossom contraction, one BFS per free
    vertex. A search that fails leaves a Hungarian tree whose vertices
    can never lie on an augmenting path again, so they are retired.
    """
    n, adj = g.n, g.adj
    mate = [-1] * n
    _greedy(g, mate)
    dead = [False] * n

    for root in range(n):
        if mate[root] != -1 or dead[root]:
            continue
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        found = -1
        while queue and found == -1:
            v = queue.popleft()
            for to in adj[v]:
                if dead[to] or base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        found = to
                        break
                    used[mate[to]] = True
                    queue.append(mate[to])

        if found == -1:
            for i in range(n):
                if used[i] or parent[i] != -1:
                    dead[i] = True
            continue
        v = found
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt

    return Matching.from_pairs((v, mate[v]) for v in range(n) if mate[v] > v)


def matching_number(g: Graph) -> int:
    return maximum_matching(g).size


def has_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    return 2 * matching_number(g) == g.n


# -- exhaustive oracles ------------------------------------------------------


def _check_cap(g: Graph, cap: int) -> None:
    if g.num_edges > cap:
        raise CapExceeded(f"{g.num_edges} edges exceeds enumeration cap {cap}")


def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in nbrs) for nbrs in g.adj]


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def max_matching_census(g: Graph, cap: int = DEFAULT_ENUM_CAP) -> tuple[int, int]:
    """(matching number, number of maximum matchings) by exhaustive search.

    Branches on the lowest-indexed undecided vertex: leave it uncovered, or
    match it to each undecided neighbor in ascending order. Sub-results
    are memoized on the set of undecided vertices, which keeps the search
    exhaustive while sharing identical subproblems.
    """
    _check_cap(g, cap)
    nbr = _masks(g)
    memo: dict[int, tuple[int, int]] = {0: (0, 1)}

    def solve(mask: int) -> tuple[int, int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = _lowest(mask)
        rest = mask & ~(1 << v)
        best, count = solve(rest)
        cand = nbr[v] & rest
        while cand:
            u = _lowest(cand)
            cand &= cand - 1
            size, c = solve(rest & ~(1 << u))
            size += 1
            if size > best:
                best, count = size, c
            elif size == best:
                count += c
        memo[mask] = (best, count)
        return best, count

    return solve((1 << g.n) - 1)


def count_maximum_matchings_bruteforce(g: Graph, cap: int = DEFAULT_ENUM_CAP) -> int:
    return max_matching_census(g, cap)[1]


def count_perfect_matchings_bruteforce(g: Graph, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Number of perfect matchings, branching on the lowest uncovered vertex.

    Odd vertex counts return 0 and emit a warning.
    """
    _check_cap(g, cap)
    if g.n % 2:
        warnings.warn("odd vertex count: no perfect matchings", stacklevel=2)
        return 0
    nbr = _masks(g)
    memo: dict[int, int] = {0: 1}

    def solve(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = _lowest(mask)
        rest = mask & ~(1 << v)
        total = 0
        cand = nbr[v] & rest
        while cand:
            u = _lowest(cand)
            cand &= cand - 1
            total += solve(rest & ~(1 << u))
        memo[mask] = total
        return total

    return solve((1 << g.n) - 1)


def enumerate_matchings(g: Graph, cap: int = DEFAULT_ENUM_CAP):
    """Yield every matching (including the empty one) as a tuple of edges.

    Plain edge-subset backtracking, unmemoized; only for tiny graphs.
    """
    _check_cap(g, cap)
    edges = list(g.edges())

    def rec(i: int, used: int, chosen: list[Edge]):
        if i == len(edges):
            yield tuple(chosen)
            return
        yield from rec(i + 1, used, chosen)
        u, v = edges[i]
        if not (used >> u) & 1 and not (used >> v) & 1:
            chosen.append(edges[i])
            yield from rec(i + 1, used | (1 << u) | (1 << v), chosen)
            chosen.pop()

    yield from rec(0, 0, [])
