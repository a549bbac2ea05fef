"""Command-line entry point: ``matchfab {generate,verify,report}``.

Exit codes: 0 success, 1 a verification check failed, 2 invalid
arguments, 3 a generation or resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .errors import CapExceeded, GenerationTooLarge
from .generators import gen_nonfractal_oriented, generate, to_orientation_text
from .graph import Graph, to_dot, to_edgelist, to_json_dict
from .report import REPORT_COLUMNS, Caps, build_report, report_row

FAMILIES = ("fractal", "nonfractal", "sierpinski")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchfab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES, required=True)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--enum-cap", type=_positive, default=Caps.enum_edges,
                        help="max edges for exhaustive enumeration (default %(default)s)")
    common.add_argument("--det-cap", type=_positive, default=Caps.det_order,
                        help="max matrix order / vertex count for exact solvers (default %(default)s)")
    common.add_argument("--cycle-cap", type=_positive, default=Caps.cycle_count,
                        help="max cycles enumerated for Pfaffian certification (default %(default)s)")

    gen = sub.add_parser("generate", parents=[common], help="write a generated graph")
    gen.add_argument("--g", type=_positive, required=True)
    gen.add_argument("--format", choices=("edgelist", "dot", "json", "table"), default="edgelist")
    gen.add_argument("--oriented", action="store_true",
                     help="also emit the orientation of H_g (nonfractal only)")

    ver = sub.add_parser("verify", parents=[common], help="run analytic vs empirical checks")
    ver.add_argument("--g", type=_positive, required=True)
    ver.add_argument("--format", choices=("json", "table"), default="json")

    rep = sub.add_parser("report", parents=[common], help="per-generation summary table")
    rep.add_argument("--g", type=_positive, default=1, help="first generation")
    rep.add_argument("--g-max", type=_positive, help="last generation (default: --g)")
    rep.add_argument("--format", choices=("table", "json"), default="table")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _graph_table(graph: Graph) -> str:
    hist = Counter(graph.degrees())
    lines = [f"n {graph.n}", f"e {graph.num_edges}", "degree count"]
    lines += [f"{d} {c}" for d, c in sorted(hist.items())]
    lines += [f"{role} {v}" for role, v in sorted(graph.hubs().items())]
    return "\n".join(lines) + "\n"


def _table(rows: list[dict], columns) -> str:
    cells = [[str(c) for c in columns]]
    cells += [["-" if row.get(c) is None else _fmt(row[c]) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    return "".join("  ".join(x.rjust(w) for x, w in zip(r, widths)) + "\n" for r in cells)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def cmd_generate(args: argparse.Namespace) -> int:
    if args.oriented and args.family != "nonfractal":
        raise UsageError("--oriented applies to --family nonfractal only")
    if args.oriented and args.format not in ("json",) and args.out is None:
        raise UsageError("--oriented with a text format needs --out for the sidecar file")
    og = gen_nonfractal_oriented(args.g) if args.oriented else None
    graph = og.base if og is not None else generate(args.family, args.g)
    if args.format == "edgelist":
        text = to_edgelist(graph)
    elif args.format == "dot":
        text = to_dot(graph)
    elif args.format == "json":
        payload = to_json_dict(graph)
        if og is not None:
            payload["arcs"] = [list(a) for a in og.arcs()]
        text = json.dumps(payload, sort_keys=True) + "\n"
    else:
        text = _graph_table(graph)
    _emit(text, args.out)
    if og is not None and args.format != "json":
        _emit(to_orientation_text(og), args.out + ".orient")
    return EXIT_OK


def _caps(args: argparse.Namespace) -> Caps:
    return Caps(args.enum_cap, args.det_cap, args.cycle_cap)


def cmd_verify(args: argparse.Namespace) -> int:
    report = build_report(args.family, args.g, _caps(args))
    if args.format == "json":
        text = json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    else:
        rows = [{"check": k, "verdict": v, "detail": report.details.get(k, "")}
                for k, v in report.verdicts.items()]
        text = _table(rows, ("check", "verdict", "detail"))
    _emit(text, args.out)
    return report.exit_code


def cmd_report(args: argparse.Namespace) -> int:
    g_max = args.g_max if args.g_max is not None else args.g
    if g_max < args.g:
        raise UsageError("--g-max must be >= --g")
    caps = _caps(args)
    rows = [report_row(args.family, g, caps) for g in range(args.g, g_max + 1)]
    if args.format == "json":
        text = json.dumps({"family": args.family, "rows": rows}, sort_keys=True, indent=2) + "\n"
    else:
        text = _table(rows, REPORT_COLUMNS)
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "verify": cmd_verify, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"matchfab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GenerationTooLarge, CapExceeded) as exc:
        print(f"matchfab: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
