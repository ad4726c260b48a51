#!/usr/bin/env python3
"""End-to-end demo on the fixture snippet.

Builds the demo knowledge base in memory, resolves the regex snippet
against it, and prints the sketches, the covering problem, the chosen
bindings, and the patched source.  The snippet's simple name ``Pattern``
has three candidates across two dependencies; the member sketches pin the
right one and the report recommends a single dependency.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from depsketch import Coordinate, KnowledgeBase, dump_problem, emit_patch, resolve

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def build_kb() -> KnowledgeBase:
    kb = KnowledgeBase()
    kb.ingest_class_listing(FIXTURES / "jdk8_classes.txt", Coordinate.parse("jdk:java8:8"))
    kb.ingest_class_listing(
        FIXTURES / "regexkit_classes.txt", Coordinate.parse("com.regexkit:regexkit:1.2")
    )
    return kb


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "source",
        nargs="?",
        default=str(FIXTURES / "snippet.java"),
        help="snippet to resolve (default: the fixture walkthrough)",
    )
    parser.add_argument("--declared", action="append", default=[], help="g:a:v already declared")
    args = parser.parse_args()

    source = Path(args.source).read_text(encoding="utf-8")
    kb = build_kb()
    declared = [Coordinate.parse(text) for text in args.declared]
    resolution = resolve(source, kb, declared)

    print("== sketches ==")
    for sketch in resolution.sketches:
        marker = "U" if sketch.has_holes else "R"
        spans = " ".join(span.render() for span in sketch.occurrences)
        print(f"{marker} {sketch.render()}   [{spans}]")

    print("\n== covering problem ==")
    print(dump_problem(resolution.problem, resolution.variable_names), end="")

    print("== bindings ==")
    for binding in resolution.bindings:
        print(f"{binding.sketch.render()} -> {binding.entry.render()} [{binding.entry.dep.render()}]")
    for note in resolution.ambiguities:
        print(f"ambiguous: {note}")

    print(f"\ncost {resolution.cost}")
    print("dependencies: " + (", ".join(resolution.dependencies) or "(none)"))
    print("imports: " + (", ".join(resolution.imports) or "(none)"))

    print("\n== patched source ==")
    print(emit_patch(resolution, source, partial=bool(resolution.unresolved)), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
