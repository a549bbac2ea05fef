"""Analytic-versus-empirical cross-checks for one (family, generation)."""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import analytic
from .errors import CapExceeded
from .generators import gen_fractal, gen_fractal_edge_replacement, gen_nonfractal, gen_nonfractal_edge_replacement
from .generators import gen_nonfractal_oriented, generate
from .graph import Graph, remove_vertices
from .matching import DEFAULT_ENUM_CAP, count_perfect_matchings_bruteforce, matching_number, max_matching_census
from .pfaffian import DEFAULT_CYCLE_CAP, pm_count_via_determinant, verify_determinant_lemmas, verify_pfaffian
from .stats import degree_stats, distance_stats

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
# all-pairs distances hold an n x n float matrix
DISTANCE_MAX_N = 3000


@dataclass(frozen=True)
class Caps:
    enum_edges: int = DEFAULT_ENUM_CAP
    det_order: int = 43692  # order of the H_8 skew adjacency matrix
    cycle_count: int = DEFAULT_CYCLE_CAP

    def __post_init__(self) -> None:
        if min(self.enum_edges, self.det_order, self.cycle_count) <= 0:
            raise ValueError("caps must be positive")


@dataclass
class AnalyticReport:
    family: str
    g: int
    n: int
    e: int
    matching_number: int
    counts: dict[str, str] = field(default_factory=dict)
    entropy: float | None = None
    mu: dict | None = None
    pearson: dict | None = None
    knn: dict | None = None
    verdicts: dict[str, str] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        values = set(self.verdicts.values())
        if FAIL in values:
            return 1
        if SKIPPED in values:
            return 3
        return 0

    def to_dict(self) -> dict:
        return asdict(self)


def rational_json(x: Fraction | None) -> dict | None:
    if x is None:
        return None
    return {"exact": str(x), "float": float(x)}


class _Checker:
    def __init__(self, report: AnalyticReport) -> None:
        self.report = report

    def run(self, name: str, fn: Callable[[], tuple[bool, str] | bool]) -> None:
        try:
            out = fn()
        except CapExceeded as exc:
            self.report.verdicts[name] = SKIPPED
            self.report.details[name] = str(exc)
            return
        ok, detail = out if isinstance(out, tuple) else (out, "")
        self.report.verdicts[name] = PASS if ok else FAIL
        if detail:
            self.report.details[name] = detail

    def skip(self, name: str, why: str) -> None:
        self.report.verdicts[name] = SKIPPED
        self.report.details[name] = why


def _require(cond: bool, why: str) -> None:
    if not cond:
        raise CapExceeded(why)


def _compare(got, want) -> tuple[bool, str]:
    return got == want, f"got {got}, expected {want}"


def _hub_deleted(graph: Graph, roles: list[str]) -> Graph:
    hubs = graph.hubs()
    return remove_vertices(graph, [hubs[r] for r in roles])[0]


def _structural_checks(ck: _Checker, family: str, g: int, graph: Graph, caps: Caps) -> None:
    rep = ck.report
    closed = analytic.counts(family, g)
    ck.run("degree_law", lambda: _compare(
        dict(sorted(Counter(graph.degrees()).items())),
        dict(sorted((closed.degree_of[gi], closed.lv[gi]) for gi in closed.lv)),
    ))
    other = gen_nonfractal(g) if family == "fractal" else gen_fractal(g)
    ck.run("degree_sequence_identity", lambda: graph.degree_multiset() == other.degree_multiset())

    alt_builder = gen_fractal_edge_replacement if family == "fractal" else gen_nonfractal_edge_replacement

    def constructions() -> tuple[bool, str]:
        _require(graph.n <= DISTANCE_MAX_N, f"n={graph.n} too large for all-pairs distances")
        alt = alt_builder(g)
        same_deg = alt.degree_multiset() == graph.degree_multiset()
        same_dist = distance_stats(alt).multiset_hash == distance_stats(graph).multiset_hash
        return same_deg and same_dist, f"degree multiset {same_deg}, distance multiset {same_dist}"

    ck.run("constructions_agree", constructions)

    stats = degree_stats(graph)
    knn_closed = analytic.knn_closed(family, g)
    rep.knn = {str(d): {"closed": str(knn_closed[d]), "empirical": str(v)} for d, v in stats.knn.items()}
    ck.run("knn", lambda: _compare(stats.knn, knn_closed))

    if g >= 2:
        r_closed = analytic.pearson_closed(family, g)
        rep.pearson = {"closed": rational_json(r_closed), "empirical": rational_json(stats.pearson)}
        ck.run("pearson", lambda: _compare(stats.pearson, r_closed))
    else:
        rep.pearson = {"closed": None, "empirical": None}
        ck.run("pearson_undefined_g1", lambda: stats.pearson is None)

    mu_closed = analytic.avg_distance_closed(family, g)
    rep.mu = {"closed": rational_json(mu_closed), "empirical": None}
    if graph.n <= DISTANCE_MAX_N:
        mu_emp = distance_stats(graph).average
        rep.mu["empirical"] = rational_json(mu_emp)
        ck.run("avg_distance", lambda: _compare(mu_emp, mu_closed))
    else:
        ck.skip("avg_distance", f"n={graph.n} too large for all-pairs distances")


def _fractal_checks(ck: _Checker, g: int, graph: Graph, caps: Caps) -> None:
    rep = ck.report
    sizes = analytic.fractal_matching_sizes(g)
    cnt = analytic.fractal_matching_counts(g)
    rep.counts = {"theta": str(cnt.theta), "phi": str(cnt.phi), "varphi": str(cnt.varphi)}

    def size_branches() -> tuple[bool, str]:
        _, _, b_br, c_br = analytic.fractal_size_branches(g)
        return len(set(b_br)) == 1 and len(set(c_br)) == 1, f"b branches {b_br}, c branches {c_br}"

    ck.run("size_recursion_branches_tie", size_branches)

    def solver() -> tuple[bool, str]:
        _require(graph.n <= caps.det_order, f"n={graph.n} exceeds solver/det cap {caps.det_order}")
        return _compare(matching_number(graph), analytic.matching_number_closed(g))

    ck.run("matching_number", solver)

    def no_pm() -> tuple[bool, str]:
        _require(graph.n <= caps.det_order, f"n={graph.n} exceeds solver/det cap {caps.det_order}")
        nu = matching_number(graph)
        if g == 1:
            return nu * 2 == graph.n, "F_1 is a 4-cycle and has a perfect matching"
        return nu * 2 < graph.n, f"matching number {nu}, n/2 = {graph.n // 2}"

    ck.run("perfect_matching_absent" if g >= 2 else "perfect_matching_g1", no_pm)

    def census(roles: list[str], size: int, count: int) -> Callable[[], tuple[bool, str]]:
        def fn() -> tuple[bool, str]:
            sub = _hub_deleted(graph, roles) if roles else graph
            return _compare(max_matching_census(sub, caps.enum_edges), (size, count))

        return fn

    ck.run("bruteforce_v1v2_deleted", census(["v1", "v2"], sizes.a, cnt.phi))
    ck.run("bruteforce_v1_deleted", census(["v1"], sizes.b, cnt.varphi))
    ck.run("bruteforce_v2_deleted", census(["v2"], sizes.b, cnt.varphi))
    ck.run("bruteforce_full", census([], sizes.c, cnt.theta))


def _nonfractal_checks(ck: _Checker, g: int, graph: Graph, caps: Caps) -> None:
    rep = ck.report
    psi = analytic.nonfractal_pm_count(g)
    rep.counts = {"psi": str(psi)}
    rep.entropy = analytic.entropy_estimate(psi, graph.n).z

    def solver() -> tuple[bool, str]:
        _require(graph.n <= caps.det_order, f"n={graph.n} exceeds solver/det cap {caps.det_order}")
        return _compare(2 * matching_number(graph), graph.n)

    ck.run("perfect_matching_exists", solver)

    def via_det() -> tuple[bool, str]:
        _require(graph.n <= caps.det_order, f"order {graph.n} exceeds det cap {caps.det_order}")
        return _compare(pm_count_via_determinant(gen_nonfractal_oriented(g)), psi)

    ck.run("psi_determinant", via_det)
    ck.run("psi_bruteforce", lambda: _compare(count_perfect_matchings_bruteforce(graph, caps.enum_edges), psi))

    def pfaffian() -> tuple[bool, str]:
        verdict = verify_pfaffian(gen_nonfractal_oriented(g), caps.cycle_count)
        if verdict.pfaffian is None:
            raise CapExceeded(f"more than {caps.cycle_count} cycles")
        return verdict.pfaffian, f"{verdict.cycles_checked} nice cycles, {len(verdict.violations)} violations"

    ck.run("pfaffian_orientation", pfaffian)

    def lemmas() -> tuple[bool, str]:
        n_next = analytic.counts("nonfractal", g + 1).n
        _require(n_next <= caps.det_order, f"order {n_next} exceeds det cap {caps.det_order}")
        checks = verify_determinant_lemmas(g)
        bad = [f"{c.name}: {c.lhs} != {c.rhs}" for c in checks if not c.ok]
        return not bad, "; ".join(bad)

    ck.run("determinant_lemmas", lemmas)


def _sierpinski_checks(ck: _Checker, g: int, graph: Graph, caps: Caps) -> None:
    rep = ck.report
    ck.run("three_regular_connected", lambda: set(graph.degrees()) == {3} and graph.is_connected())
    stats = degree_stats(graph)
    rep.pearson = {"closed": None, "empirical": rational_json(stats.pearson)}
    rep.knn = {str(d): {"closed": None, "empirical": str(v)} for d, v in stats.knn.items()}
    if graph.n <= DISTANCE_MAX_N:
        rep.mu = {"closed": None, "empirical": rational_json(distance_stats(graph).average)}
    if g == 1:
        ck.run("psi_bruteforce_k4", lambda: _compare(count_perfect_matchings_bruteforce(graph, caps.enum_edges), 3))
        rep.counts = {"psi": "3"}
        rep.entropy = analytic.entropy_estimate(3, graph.n).z
        return
    psi = analytic.sierpinski_pm_count(g)
    rep.counts = {"psi": str(psi)}
    rep.entropy = analytic.entropy_estimate(psi, graph.n).z
    prev = analytic.counts("sierpinski", g - 1)
    ck.run("psi_line_graph_formula", lambda: _compare(1 << analytic.line_graph_pm_exponent(prev.n, prev.e), psi))
    ck.run("psi_bruteforce", lambda: _compare(count_perfect_matchings_bruteforce(graph, caps.enum_edges), psi))


def build_report(family: str, g: int, caps: Caps | None = None) -> AnalyticReport:
    """Run every applicable check for ``(family, g)``."""
    caps = caps or Caps()
    graph = generate(family, g)
    closed = analytic.counts(family, g)
    if family == "fractal":
        nu = analytic.matching_number_closed(g)
    else:
        nu = graph.n // 2
    rep = AnalyticReport(family, g, graph.n, graph.num_edges, nu)
    ck = _Checker(rep)
    ck.run("counts", lambda: _compare((graph.n, graph.num_edges), (closed.n, closed.e)))
    if family == "fractal":
        _structural_checks(ck, family, g, graph, caps)
        _fractal_checks(ck, g, graph, caps)
    elif family == "nonfractal":
        _structural_checks(ck, family, g, graph, caps)
        _nonfractal_checks(ck, g, graph, caps)
    else:
        _sierpinski_checks(ck, g, graph, caps)
    return rep


# -- per-generation summary rows ---------------------------------------------

REPORT_COLUMNS = (
    "g", "n", "e", "matching_number", "matching_number_solver", "count", "count_bruteforce",
    "entropy", "mu", "mu_bfs", "r", "r_bfs",
)


def report_row(family: str, g: int, caps: Caps | None = None) -> dict:
    """Closed-form columns plus empirical columns where the caps allow."""
    caps = caps or Caps()
    closed = analytic.counts(family, g)
    row: dict = dict.fromkeys(REPORT_COLUMNS)
    row.update(g=g, n=closed.n, e=closed.e)
    if family == "fractal":
        row["matching_number"] = analytic.matching_number_closed(g)
        row["count"] = str(analytic.fractal_matching_counts(g).theta)
    elif family == "nonfractal":
        row["matching_number"] = closed.n // 2
        psi = analytic.nonfractal_pm_count(g)
        row["count"] = str(psi)
        row["entropy"] = analytic.entropy_estimate(psi, closed.n).z
    else:
        row["matching_number"] = closed.n // 2
        if g >= 2:
            psi = analytic.sierpinski_pm_count(g)
            row["count"] = str(psi)
            row["entropy"] = analytic.entropy_estimate(psi, closed.n).z
    if family != "sierpinski":
        row["mu"] = str(analytic.avg_distance_closed(family, g))
        if g >= 2:
            row["r"] = str(analytic.pearson_closed(family, g))

    if closed.n > caps.det_order and closed.e > caps.enum_edges and closed.n > DISTANCE_MAX_N:
        return row
    graph = generate(family, g)
    if graph.n <= caps.det_order:
        row["matching_number_solver"] = matching_number(graph)
    if graph.num_edges <= caps.enum_edges:
        if family == "fractal":
            row["count_bruteforce"] = str(max_matching_census(graph, caps.enum_edges)[1])
        else:
            row["count_bruteforce"] = str(count_perfect_matchings_bruteforce(graph, caps.enum_edges))
        if family == "sierpinski" and g == 1:
            row["entropy"] = analytic.entropy_estimate(int(row["count_bruteforce"]), graph.n).z
    if graph.n <= DISTANCE_MAX_N:
        row["mu_bfs"] = str(distance_stats(graph).average)
        r = degree_stats(graph).pearson
        row["r_bfs"] = None if r is None else str(r)
    return row
