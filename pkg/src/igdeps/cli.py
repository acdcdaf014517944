"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 usage error or unknown
word, 3 no model, 4 extraction errors, 5 invalid graph or grammar.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import DependencyGraph, InterpretationGraph
from .extract import extract_dependencies
from .grammar import (
    GrammarValidationError,
    SelectionLimitError,
    UnknownWordError,
    load_grammar_file,
    toy_grammar_path,
    validate_grammar_source,
)
from .pipeline import AnalysisConfig, analyze
from .saturation import check_interpretation
from .solver import SolverConfig
from .textio import FormatError, canonical_ig, parse_ig, render_dot, render_tsv

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_NO_MODEL, EXIT_EXTRACTION, EXIT_INVALID = range(6)
FORMATS = ("tsv", "dot", "ig")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _render(fmt: str, deps: DependencyGraph, graph: InterpretationGraph) -> str:
    if fmt == "tsv":
        return render_tsv(deps)
    if fmt == "dot":
        return render_dot(deps)
    return canonical_ig(graph)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def cmd_analyze(args, out, err) -> int:
    tokens = args.sentence.split()
    if not tokens:
        err.write("analyze: empty sentence\n")
        return EXIT_USAGE
    try:
        grammar = load_grammar_file(args.grammar)
    except (OSError, FormatError) as exc:
        err.write(f"grammar: {exc}\n")
        return EXIT_IO
    except GrammarValidationError as exc:
        err.write(f"grammar: {exc}\n")
        return EXIT_INVALID
    cfg = AnalysisConfig(SolverConfig(max_models=args.max_models, timeout_ms=args.timeout_ms))
    try:
        result = analyze(tokens, grammar, cfg)
    except UnknownWordError as exc:
        err.write(f"analyze: {exc}\n")
        return EXIT_USAGE
    except SelectionLimitError as exc:
        err.write(f"analyze: {exc}\n")
        return EXIT_USAGE
    if not result.complete:
        err.write("analyze: search stopped early (bound or timeout)\n")
    if not result.models:
        err.write("analyze: no model found\n")
        return EXIT_NO_MODEL
    if args.all_models:
        for k, (g, e) in enumerate(zip(result.models, result.extractions)):
            out.write(f"# model {k + 1}\n")
            out.write(_render(args.format, e.graph, g))
            for x in e.errors:
                err.write(f"model {k + 1}: {x}\n")
        return EXIT_OK if result.best is not None else EXIT_EXTRACTION
    best = result.best
    if best is None:
        for x in result.extractions[0].errors:
            err.write(f"extract: {x}\n")
        out.write(_render(args.format, result.extractions[0].graph, result.models[0]))
        return EXIT_EXTRACTION
    out.write(_render(args.format, result.extractions[best].graph, result.models[best]))
    return EXIT_OK


def _load_ig(path: str, err):
    try:
        return parse_ig(_read(path))
    except (OSError, UnicodeDecodeError, FormatError) as exc:
        err.write(f"{path}: {exc}\n")
        return None


def cmd_check(args, out, err) -> int:
    graph = _load_ig(args.ig, err)
    if graph is None:
        return EXIT_IO
    report = check_interpretation(graph)
    out.write(report.render())
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_extract(args, out, err) -> int:
    graph = _load_ig(args.ig, err)
    if graph is None:
        return EXIT_IO
    report = check_interpretation(graph)
    if not report.ok:
        err.write(report.render())
        return EXIT_INVALID
    result = extract_dependencies(graph)
    out.write(_render(args.format, result.graph, graph))
    for x in result.errors:
        err.write(f"extract: {x}\n")
    return EXIT_OK if result.ok else EXIT_EXTRACTION


def cmd_grammar_validate(args, out, err) -> int:
    try:
        reports = validate_grammar_source(_read(args.path))
    except (OSError, UnicodeDecodeError, FormatError) as exc:
        err.write(f"{args.path}: {exc}\n")
        return EXIT_IO
    bad = 0
    for entry, report in reports:
        if report.ok:
            continue
        bad += 1
        for v in report.violations:
            out.write(f"{entry}\t{v}\n")
    out.write(f"{len(reports)} entries, {bad} invalid\n")
    return EXIT_INVALID if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="igdeps", description="Dependency graphs from polarized tree descriptions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="parse a whitespace-tokenized sentence")
    a.add_argument("sentence")
    a.add_argument("--grammar", default=str(toy_grammar_path()))
    a.add_argument("--format", choices=FORMATS, default="tsv")
    a.add_argument("--max-models", type=int, default=16)
    a.add_argument("--timeout-ms", type=int, default=20_000)
    a.add_argument("--all-models", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="validate a serialized interpretation graph")
    c.add_argument("ig")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("extract", help="extract dependencies from an interpretation graph")
    e.add_argument("ig")
    e.add_argument("--format", choices=FORMATS, default="tsv")
    e.set_defaults(func=cmd_extract)

    g = sub.add_parser("grammar-validate", help="check every entry of a grammar file")
    g.add_argument("path")
    g.set_defaults(func=cmd_grammar_validate)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "max_models", 1) <= 0 or getattr(args, "timeout_ms", 1) <= 0:
        err.write("bounds must be positive\n")
        return EXIT_USAGE
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
