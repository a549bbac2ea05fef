"""Empirical degree and distance statistics, in exact rationals."""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .graph import Graph


@dataclass(frozen=True)
class DegreeCorrelationReport:
    histogram: dict[int, int]
    cumulative: dict[int, Fraction]
    knn: dict[int, Fraction]
    pearson: Fraction | None  # None when undefined (0/0, e.g. regular graphs)


@dataclass(frozen=True)
class DistanceReport:
    average: Fraction
    diameter: int
    histogram: dict[int, int]  # distance -> number of unordered pairs
    multiset_hash: str


def pearson(g: Graph) -> Fraction | None:
    deg = g.degrees()
    e = g.num_edges
    s_prod = s_half = s_sq_half = Fraction(0)
    for u, v in g.edges():
        j, k = deg[u], deg[v]
        s_prod += j * k
        s_half += Fraction(j + k, 2)
        s_sq_half += Fraction(j * j + k * k, 2)
    den = e * s_sq_half - s_half**2
    if den == 0:
        return None
    return (e * s_prod - s_half**2) / den


def degree_stats(g: Graph) -> DegreeCorrelationReport:
    if g.n == 0:
        raise ValueError("empty graph")
    deg = g.degrees()
    hist = Counter(deg)
    cumulative = {}
    running = 0
    for d in sorted(hist, reverse=True):
        running += hist[d]
        cumulative[d] = Fraction(running, g.n)
    nbr_total: Counter[int] = Counter()
    for v in range(g.n):
        nbr_total[deg[v]] += sum(deg[u] for u in g.adj[v])
    # edge-endpoint weighted: total neighbor degree / total degree of the class
    knn = {d: Fraction(nbr_total[d], d * hist[d]) for d in sorted(hist) if d > 0}
    return DegreeCorrelationReport(
        dict(sorted(hist.items())),
        dict(sorted(cumulative.items())),
        knn,
        pearson(g),
    )


def _distance_matrix(g: Graph) -> np.ndarray:
    rows = [v for v in range(g.n) for _ in g.adj[v]]
    cols = [u for v in range(g.n) for u in g.adj[v]]
    mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(g.n, g.n))
    return shortest_path(mat, method="D", directed=False, unweighted=True)


def distance_stats(g: Graph) -> DistanceReport:
    """All-pairs BFS summary over unordered vertex pairs."""
    if g.n < 2:
        raise ValueError("need at least two vertices")
    dist = _distance_matrix(g)
    upper = dist[np.triu_indices(g.n, k=1)]
    if not np.all(np.isfinite(upper)):
        raise ValueError("graph is disconnected")
    values, freq = np.unique(upper.astype(np.int64), return_counts=True)
    hist = {int(d): int(c) for d, c in zip(values, freq)}
    pairs = g.n * (g.n - 1) // 2
    total = sum(d * c for d, c in hist.items())
    digest = hashlib.sha256(json.dumps(sorted(hist.items())).encode()).hexdigest()
    return DistanceReport(Fraction(total, pairs), max(hist), hist, digest)
