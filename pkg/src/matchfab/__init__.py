"""Maximum and perfect matchings in self-similar scale-free graphs.

Generators for the fractal family F_g, the non-fractal family H_g (with its
Pfaffian orientation) and the extended Sierpinski graphs, exact matching
solvers and counters, skew-determinant machinery, and the closed forms they
are checked against.
"""

from .errors import CapExceeded, DomainError, GenerationTooLarge, InconsistencyError, NotPerfectSquare
from .generators import (
    OrientedGraph,
    gen_fractal,
    gen_fractal_edge_replacement,
    gen_nonfractal,
    gen_nonfractal_edge_replacement,
    gen_nonfractal_oriented,
    gen_sierpinski_ext,
)
from .graph import Graph, line_graph, remove_vertices, subdivided_line, subdivision
from .matching import Matching, has_perfect_matching, matching_number, maximum_matching

__all__ = [
    "CapExceeded",
    "DomainError",
    "GenerationTooLarge",
    "Graph",
    "InconsistencyError",
    "Matching",
    "NotPerfectSquare",
    "OrientedGraph",
    "gen_fractal",
    "gen_fractal_edge_replacement",
    "gen_nonfractal",
    "gen_nonfractal_edge_replacement",
    "gen_nonfractal_oriented",
    "gen_sierpinski_ext",
    "has_perfect_matching",
    "line_graph",
    "matching_number",
    "maximum_matching",
    "remove_vertices",
    "subdivided_line",
    "subdivision",
]
