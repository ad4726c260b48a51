from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depsketch.solver import (
    CoveringProblem,
    EmptyClauseError,
    InfeasibleError,
    Model,
    SolverError,
    brute_force_min,
    check,
    dump_problem,
    preprocess,
    solve_min,
)


class TestConstruction:
    def test_empty_clause_rejected(self):
        with pytest.raises(EmptyClauseError):
            CoveringProblem(2, [[0], []])

    def test_out_of_range_variable_rejected(self):
        with pytest.raises(ValueError):
            CoveringProblem(2, [[0, 2]])
        with pytest.raises(ValueError):
            CoveringProblem(2, [[-1]])
        with pytest.raises(ValueError):
            CoveringProblem(2, [[0]], forced=[5])

    def test_weights_must_match_and_be_non_negative(self):
        with pytest.raises(ValueError):
            CoveringProblem(2, [[0]], weights=(1,))
        with pytest.raises(ValueError):
            CoveringProblem(2, [[0]], weights=(1, -1))

    def test_default_weights_are_unit(self):
        assert CoveringProblem(3, [[0]]).weights == (1, 1, 1)

    def test_zero_variable_problem(self):
        problem = CoveringProblem(0, [])
        assert solve_min(problem) == Model(frozenset(), 0)
        assert brute_force_min(problem) == Model(frozenset(), 0)

    def test_cost_uses_weights(self):
        problem = CoveringProblem(3, [[0]], weights=(2, 3, 4))
        assert problem.cost({0, 2}) == 6


class TestPreprocess:
    def test_unit_clause_forces_and_covers(self):
        problem = CoveringProblem(3, [[0], [0, 1], [1, 2]])
        pre = preprocess(problem)
        assert pre.forced == frozenset({0})
        assert pre.clauses == (frozenset({1, 2}),)

    def test_two_units_both_forced(self):
        pre = preprocess(CoveringProblem(2, [[0], [1]]))
        assert pre.forced == frozenset({0, 1})
        assert pre.clauses == ()

    def test_no_units_is_identity(self):
        problem = CoveringProblem(3, [[0, 1], [1, 2]])
        pre = preprocess(problem)
        assert pre.forced == frozenset()
        assert set(pre.clauses) == {frozenset({0, 1}), frozenset({1, 2})}

    def test_existing_forced_covers_clauses(self):
        pre = preprocess(CoveringProblem(3, [[0, 1], [2]], forced=[1]))
        assert pre.forced == frozenset({1, 2})
        assert pre.clauses == ()


class TestSolveMin:
    def test_shared_variable_wins(self):
        model = solve_min(CoveringProblem(3, [[0, 1], [1, 2]]))
        assert model == Model(frozenset({1}), 1)

    def test_unit_clause(self):
        assert solve_min(CoveringProblem(1, [[0]])) == Model(frozenset({0}), 1)

    def test_weights_redirect_the_choice(self):
        problem = CoveringProblem(4, [[0, 1], [2, 3]], weights=(5, 1, 1, 5))
        assert solve_min(problem) == Model(frozenset({1, 2}), 2)

    def test_forced_vars_count_into_cost(self):
        problem = CoveringProblem(3, [[1, 2]], forced=[0])
        model = solve_min(problem)
        assert model.true_vars == frozenset({0, 1})
        assert model.cost == 2

    def test_lexicographic_tie_break(self):
        # {0} and {1} both cover; smallest sorted tuple wins
        assert solve_min(CoveringProblem(2, [[0, 1]])).true_vars == frozenset({0})

    def test_tie_key_overrides_lexicographic(self):
        prefer_high = lambda s: tuple(sorted(-v for v in s))
        model = solve_min(CoveringProblem(2, [[0, 1]]), tie_key=prefer_high)
        assert model.true_vars == frozenset({1})

    def test_feasible_prunes_to_alternative(self):
        # cheapest cover {1} conflicts; must fall back to {0, 2}
        no_one = lambda s: 1 not in s
        model = solve_min(CoveringProblem(3, [[0, 1], [1, 2]]), feasible=no_one)
        assert model.true_vars == frozenset({0, 2})

    def test_infeasible_everything_raises(self):
        with pytest.raises(InfeasibleError):
            solve_min(CoveringProblem(2, [[0], [1]]), feasible=lambda s: len(s) < 2)

    def test_infeasible_forced_raises(self):
        with pytest.raises(InfeasibleError):
            solve_min(CoveringProblem(1, [], forced=[0]), feasible=lambda s: 0 not in s)


class TestBruteForce:
    def test_matches_frozen_examples(self):
        assert brute_force_min(CoveringProblem(3, [[0, 1], [1, 2]])) == Model(
            frozenset({1}), 1
        )
        weighted = CoveringProblem(4, [[0, 1], [2, 3]], weights=(5, 1, 1, 5))
        assert brute_force_min(weighted) == Model(frozenset({1, 2}), 2)

    def test_no_clauses_empty_model(self):
        assert brute_force_min(CoveringProblem(4, [])) == Model(frozenset(), 0)

    def test_cap_at_26_variables(self):
        with pytest.raises(SolverError) as err:
            brute_force_min(CoveringProblem(26, [[0]]))
        assert "capped" in str(err.value)

    def test_infeasible_raises(self):
        with pytest.raises(InfeasibleError):
            brute_force_min(CoveringProblem(2, [[0], [1]]), feasible=lambda s: len(s) < 2)


class TestCheck:
    def test_model_passes(self):
        problem = CoveringProblem(3, [[0, 1], [1, 2]])
        assert check(problem, frozenset({1}))
        assert check(problem, frozenset({0, 2}))

    def test_uncovered_clause_fails(self):
        assert not check(CoveringProblem(3, [[0, 1], [2]]), frozenset({0}))

    def test_missing_forced_fails(self):
        assert not check(CoveringProblem(2, [[1]], forced=[0]), frozenset({1}))


class TestDump:
    def test_frozen_dump(self):
        problem = CoveringProblem(3, [[0, 1], [1, 2]], weights=(1, 2, 1), forced=[0])
        assert dump_problem(problem, ["x", "y", "z"]) == (
            "p cover 3 3\n"
            "c 1 x\n"
            "c 2 y\n"
            "c 3 z\n"
            "w 2 2\n"
            "1 0\n"
            "1 2 0\n"
            "2 3 0\n"
        )

    def test_minimal_dump_has_no_decorations(self):
        assert dump_problem(CoveringProblem(2, [[0, 1]])) == "p cover 2 1\n1 2 0\n"


# -- property tests ------------------------------------------------------------


@st.composite
def covering_problems(draw, max_vars=15, max_clauses=10, weight_pool=None):
    num_vars = draw(st.integers(min_value=1, max_value=max_vars))
    clauses = draw(
        st.lists(
            st.sets(
                st.integers(min_value=0, max_value=num_vars - 1),
                min_size=1,
                max_size=min(5, num_vars),
            ),
            max_size=max_clauses,
        )
    )
    weights: tuple[int, ...] = ()
    if weight_pool is not None:
        weights = tuple(
            draw(st.sampled_from(weight_pool)) for _ in range(num_vars)
        )
    return CoveringProblem(num_vars, clauses, weights)


@st.composite
def conflict_predicates(draw, max_vars=15):
    pairs = draw(
        st.lists(
            st.tuples(
                st.integers(0, max_vars - 1), st.integers(0, max_vars - 1)
            ).filter(lambda p: p[0] != p[1]),
            max_size=4,
        )
    )

    def feasible(chosen: frozenset[int]) -> bool:
        return not any(a in chosen and b in chosen for a, b in pairs)

    return feasible


@given(problem=covering_problems())
def test_solver_agrees_with_oracle_on_unit_weights(problem):
    assert solve_min(problem) == brute_force_min(problem)


@given(problem=covering_problems(max_vars=10, weight_pool=(1, 2, 3)))
def test_solver_agrees_with_oracle_on_positive_weights(problem):
    assert solve_min(problem) == brute_force_min(problem)


@given(problem=covering_problems(max_vars=10, weight_pool=(0, 1, 2, 3)))
def test_solver_matches_oracle_cost_with_zero_weights(problem):
    # zero-weight variables allow distinct optimal sets; costs still agree
    assert solve_min(problem).cost == brute_force_min(problem).cost


@given(problem=covering_problems())
def test_preprocessing_is_sound(problem):
    assert solve_min(preprocess(problem)) == solve_min(problem)


@given(problem=covering_problems())
def test_solutions_always_check(problem):
    model = solve_min(problem)
    assert check(problem, model.true_vars)
    assert model.cost == problem.cost(model.true_vars)


@given(problem=covering_problems())
def test_minimality_witness(problem):
    model = solve_min(problem)
    for var in model.true_vars - problem.forced:
        assert not check(problem, model.true_vars - {var})


@given(
    problem=covering_problems(max_clauses=9),
    extra=st.sets(st.integers(0, 14), min_size=1, max_size=5),
)
def test_extra_clause_never_cheapens(problem, extra):
    clause = {v % problem.num_vars for v in extra}
    grown = CoveringProblem(
        problem.num_vars, problem.clauses + (clause,), problem.weights
    )
    assert solve_min(grown).cost >= solve_min(problem).cost


@given(problem=covering_problems(max_vars=10), data=st.data())
def test_feasibility_parity(problem, data):
    feasible = data.draw(conflict_predicates(max_vars=10))
    try:
        fast = solve_min(problem, feasible=feasible)
    except InfeasibleError:
        with pytest.raises(InfeasibleError):
            brute_force_min(problem, feasible=feasible)
        return
    slow = brute_force_min(problem, feasible=feasible)
    assert fast == slow
    assert feasible(fast.true_vars)


@given(problem=covering_problems())
@settings(max_examples=25)
def test_determinism(problem):
    assert solve_min(problem) == solve_min(problem)
    rebuilt = CoveringProblem(
        problem.num_vars, list(problem.clauses), problem.weights, problem.forced
    )
    assert solve_min(rebuilt) == solve_min(problem)
