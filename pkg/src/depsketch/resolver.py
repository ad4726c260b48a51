"""End-to-end resolution: sketches in, dependencies and imports out.

Each sketch becomes a clause over candidate variables.  A variable is not
one knowledge-base entry but one (dependency, providing type) pair, keyed
``group:artifact:version:provider``; the provider is the type itself for
type entries and the declaring type for members.  A static call like
``Pattern.compile(...)`` therefore pins the same variable the ``Pattern``
type sketch offers, unit propagation does the rest, and the import list
falls out of the chosen variables directly.

Weights are 1 per variable, 0 when the variable's dependency was declared
by the caller, so solutions reuse what the project already has.  A
feasibility predicate forbids mixing two versions of one artifact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .frontend import Analysis, Snippet, sketch_source
from .kb import KnowledgeBase
from .model import Coordinate, DepsketchError, KbEntry, Sketch
from .solver import CoveringProblem, Model, solve_min


class ResolutionError(DepsketchError):
    pass


class CoverageError(ResolutionError):
    """Sketches exist but the knowledge base offers nothing for any of them."""


@dataclass(frozen=True)
class Binding:
    sketch: Sketch
    entry: KbEntry
    variable_key: str


@dataclass
class Resolution:
    snippet: Snippet
    analysis: Analysis
    sketches: list[Sketch]
    problem: CoveringProblem
    variable_names: list[str]
    model: Model
    bindings: list[Binding]
    imports: list[str]  # provider FQNs of everything bound
    dependencies: list[str]  # coordinate renders actually used
    builtins: list[str]  # sketch renders assumed platform-provided
    unresolved: list[str]  # sketch renders nothing matched
    ambiguities: list[str]

    @property
    def cost(self) -> int:
        return self.model.cost


@dataclass
class _Candidates:
    """One sketch's clause under construction."""

    sketch: Sketch
    entries: list[tuple[int, KbEntry]] = field(default_factory=list)


def variable_key(entry: KbEntry) -> str:
    return f"{entry.dep.render()}:{entry.provider_fqn}"


def build_problem(
    sketches: Iterable[Sketch],
    kb: KnowledgeBase,
    declared: Iterable[Coordinate] = (),
    *,
    strict: bool = False,
) -> tuple[CoveringProblem, list[str], list[Coordinate], list[_Candidates], list[str], list[str]]:
    """Clauses for *sketches* against *kb*.

    Returns the problem, variable names, variable dependencies, per-sketch
    candidates, builtin renders, and unresolved renders.  A hole-free sketch
    nothing matches is taken as platform-provided unless ``strict``.
    """
    declared = set(declared)
    index_of: dict[str, int] = {}
    names: list[str] = []
    deps: list[Coordinate] = []
    clauses: list[set[int]] = []
    tables: list[_Candidates] = []
    builtins: list[str] = []
    unresolved: list[str] = []

    for sketch in sketches:
        found = kb.lookup(sketch)
        if not found:
            if sketch.has_holes or strict:
                unresolved.append(sketch.render())
            else:
                builtins.append(sketch.render())
            continue
        table = _Candidates(sketch)
        clause: set[int] = set()
        for entry, key in found:
            if key not in index_of:
                index_of[key] = len(names)
                names.append(key)
                deps.append(entry.dep)
            table.entries.append((index_of[key], entry))
            clause.add(index_of[key])
        clauses.append(clause)
        tables.append(table)

    sketch_count = len(tables) + len(builtins) + len(unresolved)
    genuine = [r for r in unresolved if "?" in r]
    if sketch_count and not clauses and genuine:
        raise CoverageError(
            "the knowledge base cannot cover any sketch in this snippet "
            f"(first unresolved: {genuine[0]})"
        )
    weights = [0 if dep in declared else 1 for dep in deps]
    problem = CoveringProblem(len(names), clauses, weights)
    return problem, names, deps, tables, builtins, unresolved


def _feasible_versions(deps: list[Coordinate]):
    def feasible(chosen: frozenset[int]) -> bool:
        picked: dict[tuple[str, str], str] = {}
        for var in chosen:
            dep = deps[var]
            if picked.setdefault((dep.group, dep.artifact), dep.version) != dep.version:
                return False
        return True

    return feasible


def _tie_key(names: list[str], deps: list[Coordinate]):
    # Fewer distinct dependencies first, then lexicographic variable keys.
    def key(chosen: frozenset[int]) -> tuple:
        return (
            len({deps[var].render() for var in chosen}),
            tuple(sorted(names[var] for var in chosen)),
        )

    return key


def resolve(
    source: str,
    kb: KnowledgeBase,
    declared_deps: Iterable[Coordinate] = (),
    *,
    strict: bool = False,
    require_unit: bool = False,
) -> Resolution:
    """Sketch *source*, pick a minimal dependency set, bind every sketch.

    Raises the frontend errors for unparseable input, ``CoverageError`` when
    the knowledge base is useless for the snippet, and ``InfeasibleError``
    when covering would mix versions of one artifact.
    """
    snippet, analysis = sketch_source(source, allow_wrap=not require_unit)
    declared = tuple(declared_deps)
    problem, names, deps, tables, builtins, unresolved = build_problem(
        analysis.sketches, kb, declared, strict=strict
    )
    if strict and unresolved:
        raise ResolutionError(
            "no candidates for: " + ", ".join(sorted(unresolved))
        )
    model = solve_min(
        problem,
        feasible=_feasible_versions(deps),
        tie_key=_tie_key(names, deps),
    )

    bindings: list[Binding] = []
    ambiguities: list[str] = []
    for table in tables:
        covering = [(index, entry) for index, entry in table.entries if index in model.true_vars]
        keys = sorted({names[index] for index, _ in covering})
        if len(keys) > 1:
            ambiguities.append(
                f"{table.sketch.render()} is satisfied by {len(keys)} choices: " + ", ".join(keys)
            )
        chosen_key = keys[0]
        entry = min(
            (entry for index, entry in covering if names[index] == chosen_key),
            key=lambda e: e.render(),
        )
        bindings.append(Binding(table.sketch, entry, chosen_key))

    imports = sorted({binding.entry.provider_fqn for binding in bindings})
    dependencies = sorted({binding.entry.dep.render() for binding in bindings})
    return Resolution(
        snippet=snippet,
        analysis=analysis,
        sketches=list(analysis.sketches),
        problem=problem,
        variable_names=names,
        model=model,
        bindings=bindings,
        imports=imports,
        dependencies=dependencies,
        builtins=builtins,
        unresolved=unresolved,
        ambiguities=ambiguities,
    )


def emit_patch(resolution: Resolution, source: str, *, partial: bool = False) -> str:
    """*source* with the missing imports added above its first non-import line.

    Everything below the inserted block is byte-identical to the input.
    The ``java.lang`` package and dotless names need no import and are
    skipped; so is anything the snippet already imports.  Unresolved
    sketches block patching unless *partial*.
    """
    if resolution.unresolved and not partial:
        raise ResolutionError(
            f"{len(resolution.unresolved)} sketches are unresolved, pass partial to patch anyway"
        )
    existing = set(resolution.analysis.imports.values())
    wanted = [
        fqn
        for fqn in resolution.imports
        if "." in fqn and fqn.rsplit(".", 1)[0] != "java.lang" and fqn not in existing
    ]
    if not wanted:
        return source
    lines = source.splitlines(keepends=True)
    insert_at = len(lines)
    for index, line in enumerate(lines):
        if not line.strip().startswith("import "):
            insert_at = index
            break
    block = "".join(f"import {fqn};\n" for fqn in wanted)
    return "".join(lines[:insert_at]) + block + "".join(lines[insert_at:])
