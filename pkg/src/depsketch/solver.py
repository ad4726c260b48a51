"""Minimal-model search over positive covering formulas.

A problem is a conjunction of positive clauses: each clause lists variable
ids of which at least one must be true.  The goal is a satisfying set of
true variables with minimal total weight; the empty clause is therefore
unsatisfiable by construction and rejected up front.

``solve_min`` is the production path: unit-clause preprocessing followed by
branch and bound over the remaining clauses.  ``brute_force_min`` is an
independent oracle that enumerates candidate sets directly; the two agree
on cost for every input and on the chosen set whenever weights are
positive.  Keep them separate, the tests compare one against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .model import DepsketchError

_BRUTE_FORCE_CAP = 25


class SolverError(DepsketchError):
    pass


class EmptyClauseError(SolverError):
    """A clause with no candidates at all; nothing can cover it."""


class InfeasibleError(SolverError):
    """Every cover violates the feasibility predicate."""


@dataclass(frozen=True)
class CoveringProblem:
    """Positive clauses over ``num_vars`` variables, with optional weights
    and a set of variables forced true before the search starts."""

    num_vars: int
    clauses: tuple[frozenset[int], ...]
    weights: tuple[int, ...] = ()
    forced: frozenset[int] = frozenset()

    def __init__(
        self,
        num_vars: int,
        clauses: Iterable[Iterable[int]],
        weights: Iterable[int] = (),
        forced: Iterable[int] = (),
    ):
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", tuple(frozenset(c) for c in clauses))
        object.__setattr__(self, "weights", tuple(weights) or (1,) * num_vars)
        object.__setattr__(self, "forced", frozenset(forced))
        if num_vars < 0:
            raise ValueError("negative variable count")
        if len(self.weights) != num_vars:
            raise ValueError(f"expected {num_vars} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        for clause in self.clauses:
            if not clause:
                raise EmptyClauseError("a clause with no candidates cannot be covered")
            self._check_range(clause)
        self._check_range(self.forced)

    def _check_range(self, variables: frozenset[int]) -> None:
        for var in variables:
            if not 0 <= var < self.num_vars:
                raise ValueError(f"variable {var} out of range [0, {self.num_vars})")

    def cost(self, variables: Iterable[int]) -> int:
        return sum(self.weights[v] for v in variables)


@dataclass(frozen=True)
class Model:
    true_vars: frozenset[int]
    cost: int


Feasible = Callable[[frozenset[int]], bool]
TieKey = Callable[[frozenset[int]], object]


def preprocess(problem: CoveringProblem) -> CoveringProblem:
    """Force every unit clause's variable and drop all covered clauses.

    Clauses never shrink (variables are only ever set true), so one pass
    reaches the fixpoint: surviving clauses had two or more candidates and
    still do.
    """
    forced = set(problem.forced)
    live = [c for c in problem.clauses if not (c & forced)]
    for clause in live:
        if len(clause) == 1:
            forced.update(clause)
    remaining = tuple(c for c in live if not (c & forced))
    return CoveringProblem(problem.num_vars, remaining, problem.weights, forced)


def _score(problem: CoveringProblem, variables: set[int], tie_key: TieKey | None) -> tuple:
    key: tuple = (problem.cost(variables),)
    if tie_key is not None:
        key += (tie_key(frozenset(variables)),)
    return key + (tuple(sorted(variables)),)


def solve_min(
    problem: CoveringProblem,
    *,
    feasible: Feasible | None = None,
    tie_key: TieKey | None = None,
) -> Model:
    """Cheapest satisfying set, ties broken by ``tie_key`` then variable ids.

    ``feasible`` must be anti-monotone (infeasible sets stay infeasible when
    grown); it prunes branches and raises ``InfeasibleError`` when nothing
    passes.  Branching excludes already-tried variables per level, so each
    minimal cover is visited exactly once.
    """
    pre = preprocess(problem)
    if feasible is not None and not feasible(pre.forced):
        raise InfeasibleError("the forced choices already conflict")

    best: tuple | None = None
    best_vars: frozenset[int] | None = None

    def search(chosen: frozenset[int], blocked: frozenset[int], uncovered: list[frozenset[int]]) -> None:
        nonlocal best, best_vars
        if best is not None and problem.cost(pre.forced | chosen) > best[0]:
            return
        if not uncovered:
            candidate = set(pre.forced | chosen)
            key = _score(problem, candidate, tie_key)
            if best is None or key < best:
                best, best_vars = key, frozenset(candidate)
            return
        clause = min(uncovered, key=lambda c: (len(c), sorted(c)))
        tried: set[int] = set()
        for var in sorted(clause):
            if var in blocked:
                continue
            extended = chosen | {var}
            if feasible is None or feasible(pre.forced | extended):
                search(extended, blocked | tried, [c for c in uncovered if var not in c])
            tried.add(var)

    search(frozenset(), frozenset(), list(pre.clauses))
    if best_vars is None:
        raise InfeasibleError("no cover satisfies the constraints")
    return Model(best_vars, problem.cost(best_vars))


def brute_force_min(
    problem: CoveringProblem,
    *,
    feasible: Feasible | None = None,
    tie_key: TieKey | None = None,
) -> Model:
    """Reference answer by direct enumeration; capped at 25 variables.

    Uniform weights enumerate by cardinality and stop at the first covering
    size; otherwise every subset is scored.  Agreement with ``solve_min`` on
    the chosen set is guaranteed for positive weights.
    """
    if problem.num_vars > _BRUTE_FORCE_CAP:
        raise SolverError(f"brute force is capped at {_BRUTE_FORCE_CAP} variables")
    if len(set(problem.weights)) <= 1:
        model = _brute_uniform(problem, feasible, tie_key)
    else:
        model = _brute_general(problem, feasible, tie_key)
    if model is None:
        raise InfeasibleError("no cover satisfies the constraints")
    return model


def _covers(problem: CoveringProblem, variables: set[int]) -> bool:
    return all(clause & variables for clause in problem.clauses)


def _brute_uniform(
    problem: CoveringProblem, feasible: Feasible | None, tie_key: TieKey | None
) -> Model | None:
    free = [v for v in range(problem.num_vars) if v not in problem.forced]
    for extra in range(len(free) + 1):
        hits = []
        for combo in combinations(free, extra):
            candidate = set(problem.forced) | set(combo)
            if _covers(problem, candidate) and (feasible is None or feasible(frozenset(candidate))):
                hits.append(candidate)
        if hits:
            best = min(hits, key=lambda c: _score(problem, c, tie_key))
            return Model(frozenset(best), problem.cost(best))
    return None


def _brute_general(
    problem: CoveringProblem, feasible: Feasible | None, tie_key: TieKey | None
) -> Model | None:
    clause_masks = [sum(1 << v for v in clause) for clause in problem.clauses]
    forced_mask = sum(1 << v for v in problem.forced)
    best: tuple | None = None
    best_set: set[int] | None = None
    for mask in range(1 << problem.num_vars):
        if mask & forced_mask != forced_mask:
            continue
        if any(not mask & clause_mask for clause_mask in clause_masks):
            continue
        candidate = {v for v in range(problem.num_vars) if mask >> v & 1}
        if feasible is not None and not feasible(frozenset(candidate)):
            continue
        key = _score(problem, candidate, tie_key)
        if best is None or key < best:
            best, best_set = key, candidate
    if best_set is None:
        return None
    return Model(frozenset(best_set), problem.cost(best_set))


def check(problem: CoveringProblem, true_vars: frozenset[int]) -> bool:
    """Is this set a model: forced included and every clause intersected."""
    return problem.forced <= true_vars and all(c & true_vars for c in problem.clauses)


def dump_problem(problem: CoveringProblem, names: Iterable[str] = ()) -> str:
    """Debug dump: clause lines are 0-terminated, so ids are 1-based.

    Forced variables appear as unit clauses; the header counts them as such.
    ``c`` lines name variables, ``w`` lines give non-default weights.
    """
    lines = [f"p cover {problem.num_vars} {len(problem.clauses) + len(problem.forced)}"]
    for index, name in enumerate(names):
        lines.append(f"c {index + 1} {name}")
    for var, weight in enumerate(problem.weights):
        if weight != 1:
            lines.append(f"w {var + 1} {weight}")
    for var in sorted(problem.forced):
        lines.append(f"{var + 1} 0")
    for clause in problem.clauses:
        lines.append(" ".join(str(var + 1) for var in sorted(clause)) + " 0")
    return "\n".join(lines) + "\n"
