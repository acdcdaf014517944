"""Analyze the example corpus and print every output format.

    python3 scripts/run_corpus.py [--grammar PATH] [--out FILE]

The output is deterministic; the acceptance suite runs this script twice
under different hash seeds and compares the bytes.
"""

from __future__ import annotations

import argparse
import io
import sys
import time

from igdeps.cli import main as cli_main
from igdeps.grammar import toy_grammar_path

SENTENCES = [
    "Jean en apprécie le goût",
    "Jean permet à Marie de venir",
    "Jean promet à Marie de venir",
    "la fille que Jean connaît",
]


def run(grammar: str, timings: bool) -> str:
    buf = io.StringIO()
    for sentence in SENTENCES:
        for fmt in ("tsv", "dot", "ig"):
            out, err = io.StringIO(), io.StringIO()
            t0 = time.perf_counter()
            code = cli_main(["analyze", sentence, "--grammar", grammar, "--format", fmt], out, err)
            dt = time.perf_counter() - t0
            buf.write(f"=== {sentence} [{fmt}] exit={code}\n")
            buf.write(out.getvalue())
            if timings:
                sys.stderr.write(f"{sentence!r} {fmt}: {dt * 1000:.1f} ms\n")
    return buf.getvalue()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grammar", default=str(toy_grammar_path()))
    ap.add_argument("--out")
    ap.add_argument("--timings", action="store_true")
    args = ap.parse_args(argv)
    text = run(args.grammar, args.timings)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
