from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchfab import analytic
from matchfab.errors import CapExceeded, NotPerfectSquare
from matchfab.generators import OrientedGraph, gen_fractal, gen_nonfractal, gen_nonfractal_oriented
from matchfab.graph import Graph, cycle_graph, path_graph
from matchfab.matching import count_perfect_matchings_bruteforce
from matchfab.pfaffian import (
    SparseMatrix,
    co_oriented_count,
    determinant_bareiss,
    determinant_cofactor,
    determinant_exact,
    determinant_mod,
    determinant_sparse,
    dump_matrix,
    elementary_cycles,
    enumerate_nice_cycles,
    exact_sqrt,
    hub_determinants,
    hub_submatrices,
    nice_paths,
    parse_matrix,
    pm_count_via_determinant,
    residue_check,
    skew_adjacency,
    submatrix,
    verify_determinant_lemmas,
    verify_pfaffian,
)


def _matrices(max_order: int, lo: int = -3, hi: int = 3):
    return st.integers(min_value=0, max_value=max_order).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n
        ).map(lambda rows: SparseMatrix(n, n, SparseMatrix.from_dense(rows).rows) if n else SparseMatrix(0, 0, ()))
    )


def _skew(n: int, upper: list[int]) -> SparseMatrix:
    dense = [[0] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i + 1, n):
            x = next(it)
            dense[i][j], dense[j][i] = x, -x
    return SparseMatrix.from_dense(dense)


def _cyclic_c4() -> OrientedGraph:
    return OrientedGraph.from_arcs(cycle_graph(4), [(0, 1), (1, 2), (2, 3), (3, 0)])


# skew adjacency and submatrices


def test_single_arc():
    og = OrientedGraph.from_arcs(path_graph(2), [(0, 1)])
    assert skew_adjacency(og).to_dense() == [[0, 1], [-1, 0]]


def test_h1_skew_adjacency():
    og = gen_nonfractal_oriented(1)
    a = skew_adjacency(og)
    hubs = og.base.hubs()
    v1, v2, v3, v4 = (hubs[r] for r in ("v1", "v2", "v3", "v4"))
    assert a.is_antisymmetric()
    assert [a[v1, x] for x in (v1, v2, v3, v4)] == [0, 1, 1, 0]
    assert a[v4, v2] == 1 and a[v3, v4] == 1


HUB_BLOCK = [[0, 1, 1, 0], [-1, 0, 0, -1], [-1, 0, 0, 1], [0, 1, -1, 0]]


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_hub_block_is_stable(g):
    og = gen_nonfractal_oriented(g)
    a = skew_adjacency(og)
    hubs = og.base.hubs()
    order = [hubs[r] for r in ("v1", "v2", "v3", "v4")]
    assert [[a[i, j] for j in order] for i in order] == HUB_BLOCK


def test_submatrix_shapes_and_symmetry():
    subs = hub_submatrices(gen_nonfractal_oriented(1))
    assert subs["B"].nrows == subs["B"].ncols == 3
    assert subs["K"].nrows == 2
    for name in ("A", "B", "B'", "K"):
        assert subs[name].is_antisymmetric()
    assert not subs["D"].is_antisymmetric()


def test_submatrix_index_errors():
    m = SparseMatrix.from_dense([[0, 1], [-1, 0]])
    with pytest.raises(IndexError):
        submatrix(m, [2], [])
    with pytest.raises(IndexError):
        submatrix(m, [], [-1])


def test_sparse_matrix_helpers():
    m = SparseMatrix.from_dense([[1, 2, 0], [0, 0, 3]])
    assert not m.is_square
    assert m.transpose().to_dense() == [[1, 0], [2, 0], [0, 3]]
    assert (-m).to_dense() == [[-1, -2, 0], [0, 0, -3]]
    assert m == SparseMatrix.from_dense(m.to_dense())


# determinants


def test_determinant_examples():
    assert determinant_exact(skew_adjacency(gen_nonfractal_oriented(1))) == 4
    assert determinant_exact(skew_adjacency(gen_nonfractal_oriented(2))) == 64
    eye = SparseMatrix.from_dense([[int(i == j) for j in range(5)] for i in range(5)])
    assert determinant_exact(eye) == 1
    assert determinant_exact(SparseMatrix(0, 0, ())) == 1


@given(_matrices(6))
@settings(max_examples=200, deadline=None)
def test_determinants_agree_with_cofactor(m):
    d = determinant_cofactor(m)
    assert determinant_bareiss(m) == d
    assert determinant_sparse(m) == d
    for p in (7, 1_000_000_007):
        assert determinant_mod(m, p) == d % p


@given(_matrices(14, -2, 2))
@settings(max_examples=80, deadline=None)
def test_bareiss_and_sparse_agree(m):
    d = determinant_bareiss(m)
    assert determinant_sparse(m) == d
    residue_check(m, d)


@given(st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(-2, 2), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
))
@settings(max_examples=100, deadline=None)
def test_skew_determinants(case):
    n, upper = case
    m = _skew(n, upper)
    d = determinant_exact(m)
    if n % 2:
        assert d == 0
    else:
        exact_sqrt(d)  # always a perfect square


def test_residue_check_catches_wrong_value():
    m = skew_adjacency(gen_nonfractal_oriented(2))
    with pytest.raises(Exception):
        residue_check(m, 65)


def test_unknown_method():
    with pytest.raises(ValueError):
        determinant_exact(SparseMatrix.from_dense([[1]]), method="lu")


def test_exact_sqrt():
    assert exact_sqrt(4**300) == 2**300
    with pytest.raises(NotPerfectSquare):
        exact_sqrt(8)
    with pytest.raises(NotPerfectSquare):
        exact_sqrt(-4)


def test_matrix_dump_roundtrip():
    m = skew_adjacency(gen_nonfractal_oriented(2))
    text = dump_matrix(m)
    assert text.splitlines()[0] == "12"
    assert parse_matrix(text) == m
    with pytest.raises(ValueError):
        parse_matrix("2\n0 1\n")


# perfect matching counts through the determinant


def test_pm_count_examples():
    assert pm_count_via_determinant(gen_nonfractal_oriented(1)) == 2
    assert pm_count_via_determinant(gen_nonfractal_oriented(3)) == 512


def test_cyclic_c4_is_not_pfaffian():
    # an evenly oriented nice cycle makes the two matchings cancel
    assert determinant_exact(skew_adjacency(_cyclic_c4())) == 0
    assert verify_pfaffian(_cyclic_c4()).pfaffian is False


@pytest.mark.parametrize("g", range(1, 6))
def test_determinant_matches_closed_form(g):
    og = gen_nonfractal_oriented(g)
    assert pm_count_via_determinant(og) == analytic.nonfractal_pm_count(g)
    if g <= 3:
        assert count_perfect_matchings_bruteforce(og.base) == analytic.nonfractal_pm_count(g)


@pytest.mark.slow
@pytest.mark.parametrize("g", [6, 7])
def test_determinant_matches_closed_form_large(g):
    og = gen_nonfractal_oriented(g)
    assert pm_count_via_determinant(og, method="sparse") == analytic.nonfractal_pm_count(g)


# cycles and Pfaffian certification


def test_elementary_cycles_counts():
    assert len(elementary_cycles(cycle_graph(5))) == 1
    k4 = Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    # K4: four triangles and three 4-cycles
    assert sorted(len(c) for c in elementary_cycles(k4)) == [3, 3, 3, 3, 4, 4, 4]
    with pytest.raises(CapExceeded):
        elementary_cycles(k4, cap=3)


def test_c4_has_one_nice_cycle():
    (c,) = enumerate_nice_cycles(cycle_graph(4))
    assert c.length == 4


def test_h1_pfaffian():
    v = verify_pfaffian(gen_nonfractal_oriented(1))
    assert v.pfaffian is True and v.cycles_checked == 1


def test_h2_nice_cycles_and_verdict():
    og = gen_nonfractal_oriented(2)
    nice = enumerate_nice_cycles(og.base, orientation=og)
    assert nice and all(c.length % 2 == 0 for c in nice)
    verdict = verify_pfaffian(og)
    assert verdict.pfaffian is True
    assert verdict.cycles_checked == len(nice)
    assert verdict.violations == ()


def test_fractal_nice_cycle_enumeration_runs():
    nice = enumerate_nice_cycles(gen_fractal(2))
    assert all(c.length % 2 == 0 for c in nice)


def test_nice_cycles_need_even_order():
    with pytest.raises(ValueError):
        enumerate_nice_cycles(path_graph(3))


def test_pfaffian_cap_gives_indeterminate():
    v = verify_pfaffian(gen_nonfractal_oriented(3), cap=100)
    assert v.pfaffian is None


@pytest.mark.parametrize("g", [1, 2, 3])
def test_parity_independent_of_traversal(g):
    og = gen_nonfractal_oriented(g)
    for cyc in elementary_cycles(og.base)[:500]:
        if len(cyc) % 2 == 0:
            fwd = co_oriented_count(og, cyc, closed=True)
            back = co_oriented_count(og, cyc[::-1], closed=True)
            assert fwd % 2 == back % 2


def test_co_oriented_count_rejects_non_edge():
    og = gen_nonfractal_oriented(1)
    hubs = og.base.hubs()
    with pytest.raises(ValueError):
        co_oriented_count(og, [hubs["v1"], hubs["v4"]], closed=False)


@pytest.mark.parametrize("g", [1, 2])
def test_hub_nice_paths_oddly_oriented(g):
    og = gen_nonfractal_oriented(g)
    hubs = og.base.hubs()
    paths = nice_paths(og.base, hubs["v1"], hubs["v2"])
    assert paths
    for p in paths:
        assert co_oriented_count(og, p, closed=False) % 2 == 1


# determinant identities


def test_hub_determinants_small():
    d1, d2 = hub_determinants(1), hub_determinants(2)
    assert (d1["A"], d1["K"], d1["D"], d1["D'"]) == (4, 1, -2, 2)
    assert (d2["A"], d2["K"]) == (64, 4)
    assert d1["B"] == d1["B'"] == d2["B"] == 0


@pytest.mark.parametrize("g", range(1, 5))
def test_determinant_lemmas(g):
    for check in verify_determinant_lemmas(g):
        assert check.ok, (check.name, check.lhs, check.rhs)


def test_nonfractal_graph_untouched_by_orientation():
    assert gen_nonfractal_oriented(3).base.same_structure(gen_nonfractal(3))
