"""Command-line front end: ``flatband analyze | truncate | verify``.

Exit codes: 0 ok, 2 parse/input error, 3 engine error, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .builtins import BUILTINS, load_builtin
from .errors import EngineError, GraphFormatError
from .lattice import Edge, QuotientGraph, parse_graph
from .report import (
    AnalysisConfig,
    AnalysisReport,
    add_truncation,
    analyze,
    bands_from_json,
    dumps,
    render_text,
    violations,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ENGINE = 3
EXIT_VERIFY = 4

log = logging.getLogger("flatband")


class InputError(Exception):
    pass


def load_graph(args) -> tuple[QuotientGraph, str]:
    if args.builtin:
        return load_builtin(args.builtin), f"builtin:{args.builtin}"
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    return parse_graph(text), f"file:{args.file}"


def corrupt(graph: QuotientGraph) -> QuotientGraph:
    """Negate the first nonzero edge offset that still gives a valid graph."""
    edges = list(graph.edges)
    for k, (i, j, g) in enumerate(edges):
        if not any(g):
            continue
        trial = edges[:k] + [Edge(i, j, tuple(-x for x in g))] + edges[k + 1:]
        try:
            return QuotientGraph(graph.dim, graph.vertices, tuple(trial))
        except GraphFormatError:
            continue
    i, j, _ = edges[0]
    e1 = (1,) + (0,) * (graph.dim - 1)
    return QuotientGraph(graph.dim, graph.vertices, (Edge(i, j, e1),) + tuple(edges[1:]))


def _config(args) -> AnalysisConfig:
    return AnalysisConfig(
        stage_bound=args.stage_bound,
        threads=max(1, args.threads),
        timing=args.timing,
    )


def _emit(report: AnalysisReport, args, extra: Sequence[str] = ()) -> None:
    if args.json:
        text = dumps(report)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    if args.json != "-":
        sys.stdout.write(render_text(report))
        for line in extra:
            print(line)


def cmd_analyze(args) -> int:
    graph, source = load_graph(args)
    report = analyze(graph, source, _config(args))
    _emit(report, args)
    return EXIT_OK


def cmd_truncate(args) -> int:
    graph, source = load_graph(args)
    config = _config(args)
    if args.from_json:
        try:
            with open(args.from_json, encoding="utf-8") as fh:
                data = json.load(fh)
            report = AnalysisReport(graph, source, config)
            report.bands = bands_from_json(data, graph)
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot use {args.from_json}: {exc}") from None
        report.config.stage_bound = data.get("settings", {}).get("stage_bound")
    else:
        report = analyze(graph, source, config)
    add_truncation(report, args.jmax, args.thickness)
    _emit(report, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    graph, source = load_graph(args)
    problems = []
    if args.self_test_corrupt:
        reference = analyze(graph, source, _config(args))
        graph = corrupt(graph)
        source += " (corrupted)"
        report = analyze(graph, source, _config(args))
        before = [b.band.describe() for b in reference.bands]
        after = [b.band.describe() for b in report.bands]
        if before != after:
            problems.append(f"band set changed: {before} -> {after}")
    else:
        report = analyze(graph, source, _config(args))
    add_truncation(report, args.jmax, args.thickness)
    problems.extend(violations(report))
    verdict = ["FAIL: " + p for p in problems] or ["PASS"]
    _emit(report, args, verdict)
    if args.json == "-":
        for line in verdict:
            print(line, file=sys.stderr)
    return EXIT_VERIFY if problems else EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatband",
        description="Exact flat-band eigenvalues and densities of Z^d-periodic graphs.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--builtin", choices=sorted(BUILTINS), help="built-in lattice")
        src.add_argument("--file", help="graph file in the line format")
        p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        p.add_argument("--stage-bound", type=_positive, default=None,
                       help="abort a free resolution after this many stages (default d+3)")
        p.add_argument("--threads", type=_positive, default=1, help="analyze bands in parallel")
        p.add_argument("--timing", action="store_true", help="include per-stage timing")

    def trunc(p: argparse.ArgumentParser, jmax_default: int) -> None:
        p.add_argument("--jmax", type=_positive, default=jmax_default, help="largest ball radius")
        p.add_argument("--thickness", type=_positive, default=None,
                       help="boundary thickness j0 (default: support width of the generators)")

    p = sub.add_parser("analyze", help="flat bands, kernel generators and densities")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("truncate", help="finite-section counts with error bounds")
    common(p)
    trunc(p, 3)
    p.add_argument("--from-json", metavar="PATH", help="reuse bands from an analyze report")
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("verify", help="analyze + truncate and check every bound")
    common(p)
    trunc(p, 3)
    p.add_argument("--self-test-corrupt", action="store_true",
                   help="flip one edge offset first (negative control, should FAIL)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphFormatError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EngineError as exc:
        print(f"engine error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
