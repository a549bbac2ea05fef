"""Closed forms and recursions for the three graph families, in exact arithmetic.

Counts are Python ints, rational quantities are :class:`fractions.Fraction`.
Floats only appear in :func:`entropy_estimate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InconsistencyError

FAMILIES = ("fractal", "nonfractal", "sierpinski")
LN2_OVER_3 = math.log(2) / 3


@dataclass(frozen=True)
class FamilyCounts:
    n: int
    e: int
    # creation iteration -> number of vertices / their degree (empty for sierpinski)
    lv: dict[int, int] = field(default_factory=dict)
    degree_of: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class MatchingSizeTriple:
    a: int  # F_g minus {v1, v2}
    b: int  # F_g minus {v1}
    c: int  # F_g


@dataclass(frozen=True)
class MatchingCountTriple:
    phi: int  # F_g minus {v1, v2}
    varphi: int  # F_g minus {v1}
    theta: int  # F_g


@dataclass(frozen=True)
class EntropyEstimate:
    ln_psi: float
    z: float
    log2_exact: int | None  # exponent when the count is a power of two


def counts(family: str, g: int) -> FamilyCounts:
    if g < 1:
        raise ValueError("g must be >= 1")
    if family == "sierpinski":
        return FamilyCounts(4 * 3 ** (g - 1), 2 * 3**g)
    if family not in ("fractal", "nonfractal"):
        raise ValueError(f"unknown family {family!r}")
    n = 2 * (4**g + 2) // 3
    lv = {gi: (4 if gi == 1 else 2 * 4 ** (gi - 1)) for gi in range(1, g + 1)}
    degree_of = {gi: 2 ** (g - gi + 1) for gi in range(1, g + 1)}
    return FamilyCounts(n, 4**g, lv, degree_of)


def matching_number_closed(g: int) -> int:
    """Matching number of F_g."""
    return (4**g + 8) // 6


def fractal_size_branches(g: int) -> tuple[int, int, tuple[int, int], tuple[int, int, int]]:
    """One step of the size recursion from generation ``g`` to ``g + 1``.

    Returns ``(a_next, b, b_branches, c_branches)`` where the branch tuples
    hold every argument of the corresponding ``max``.
    """
    t = _size_recursion(g)
    a, b, c = t.a, t.b, t.c
    return (
        2 * a + 2 * b,
        b,
        (2 * a + b + c, a + 3 * b),
        (2 * a + 2 * c, 4 * b, a + 2 * b + c),
    )


def _size_recursion(g: int) -> MatchingSizeTriple:
    a, b, c = 0, 1, 2
    for _ in range(g - 1):
        a, b, c = (
            2 * a + 2 * b,
            max(2 * a + b + c, a + 3 * b),
            max(2 * a + 2 * c, 4 * b, a + 2 * b + c),
        )
    return MatchingSizeTriple(a, b, c)


def fractal_matching_sizes(g: int) -> MatchingSizeTriple:
    """(a_g, b_g, c_g) by the max-recursion, checked against the closed forms."""
    if g < 1:
        raise ValueError("g must be >= 1")
    rec = _size_recursion(g)
    p = 4**g
    closed = MatchingSizeTriple((p - 4) // 6, (p + 2) // 6, (p + 8) // 6)
    if rec != closed:
        raise InconsistencyError(f"size recursion {rec} != closed form {closed} at g={g}")
    return rec


def fractal_matching_counts(g: int) -> MatchingCountTriple:
    if g < 1:
        raise ValueError("g must be >= 1")
    phi, varphi, theta = 1, 2, 2
    for _ in range(g - 1):
        phi, varphi, theta = (
            4 * phi**2 * varphi**2,
            4 * phi**2 * varphi * theta + 4 * phi * varphi**3,
            2 * phi**2 * theta**2 + 2 * varphi**4 + 12 * phi * varphi**2 * theta,
        )
    return MatchingCountTriple(phi, varphi, theta)


def nonfractal_pm_exponent(g: int) -> int:
    """log2 of the number of perfect matchings of H_g."""
    if g < 1:
        raise ValueError("g must be >= 1")
    num = 4**g + 6 * g - 1
    if num % 9:
        raise InconsistencyError(f"exponent (4^g+6g-1)/9 not integral at g={g}")
    return num // 9


def nonfractal_pm_count(g: int) -> int:
    return 1 << nonfractal_pm_exponent(g)


def nonfractal_det_closed(g: int) -> int:
    """Determinant of the skew adjacency matrix of H_g^e."""
    return 4 ** nonfractal_pm_exponent(g)


def sierpinski_pm_exponent(g: int) -> int:
    if g < 2:
        raise DomainError(
            "closed form holds for g >= 2 only; K4 (g=1) has 3 perfect matchings, use brute force"
        )
    return 2 * 3 ** (g - 2) + 1


def sierpinski_pm_count(g: int) -> int:
    return 1 << sierpinski_pm_exponent(g)


def line_graph_pm_exponent(n: int, e: int) -> int:
    """Exponent of the line-graph lower bound 2^(E-N+1) for a connected graph."""
    return e - n + 1


def entropy_estimate(count: int, n: int) -> EntropyEstimate:
    """ln(count) / (n/2), exact in the exponent for powers of two."""
    if count < 1:
        raise ValueError("entropy needs a positive count")
    if n <= 0 or n % 2:
        raise ValueError("vertex count must be positive and even")
    half = n // 2
    if count & (count - 1) == 0:
        k = count.bit_length() - 1
        ln = k * math.log(2)
        return EntropyEstimate(ln, ln / half, k)
    shift = max(count.bit_length() - 64, 0)
    ln = math.log(count >> shift) + shift * math.log(2)
    return EntropyEstimate(ln, ln / half, None)


def nonfractal_entropy_gap(g: int) -> Fraction:
    """Exact value of (z(H_g) - ln2/3) / (ln2/3)."""
    return Fraction(6 * g - 3, 4**g + 2)


def avg_distance_closed(family: str, g: int) -> Fraction:
    if g < 1:
        raise ValueError("g must be >= 1")
    p2, p4, p8, p16 = 2**g, 4**g, 8**g, 16**g
    if family == "fractal":
        num = 22 * p2 * p16 + p8 * (21 * g + 42) + 27 * p4 + 98 * p2
        return Fraction(num, 42 * p16 + 105 * p4 + 42)
    if family == "nonfractal":
        num = 8 + 16 * p4 + 3 * p16 + 6 * g * p16
        return Fraction(2, 3) * Fraction(num, 4 * p16 + 10 * p4 + 4)
    raise ValueError(f"no average-distance closed form for {family!r}")


def pearson_closed_fractal(g: int) -> Fraction:
    if g < 2:
        raise DomainError("Pearson coefficient of F_1 (a 4-cycle) is 0/0")
    return Fraction((g - 1) ** 2, -3 * 2**g + g * g + 2 * g + 3)


def pearson_closed(family: str, g: int) -> Fraction:
    if family == "fractal":
        return pearson_closed_fractal(g)
    if family == "nonfractal":
        if g < 2:
            raise DomainError("Pearson coefficient of H_1 (a 4-cycle) is 0/0")
        return Fraction(0)
    raise ValueError(f"no Pearson closed form for {family!r}")


def knn_closed(family: str, g: int) -> dict[int, Fraction]:
    """Average neighbor degree per realized degree."""
    degrees = sorted(counts(family, g).degree_of.values())
    if family == "fractal":
        return {d: Fraction(2 * g if d == 2 else 2) for d in degrees}
    if family == "nonfractal":
        return {d: Fraction(g + 1) for d in degrees}
    raise ValueError(f"no k_nn closed form for {family!r}")
