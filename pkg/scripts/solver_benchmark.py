#!/usr/bin/env python3
"""Compare the branch-and-bound solver against the brute-force oracle.

Generates seeded random covering problems, times both paths, and reports
agreement.  Useful for eyeballing how the search scales before trusting a
bigger knowledge base to it.
"""

from __future__ import annotations

import argparse
import random
import time

from depsketch import CoveringProblem, brute_force_min, solve_min


def random_problem(rng: random.Random, max_vars: int, max_clauses: int) -> CoveringProblem:
    num_vars = rng.randint(1, max_vars)
    clauses = [
        rng.sample(range(num_vars), rng.randint(1, min(5, num_vars)))
        for _ in range(rng.randint(1, max_clauses))
    ]
    return CoveringProblem(num_vars, clauses)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=1000, help="problems per round")
    parser.add_argument("--max-vars", type=int, default=15)
    parser.add_argument("--max-clauses", type=int, default=10)
    parser.add_argument("--seed", type=int, default=20260819)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    problems = [
        random_problem(rng, args.max_vars, args.max_clauses) for _ in range(args.count)
    ]

    started = time.perf_counter()
    fast = [solve_min(problem) for problem in problems]
    fast_time = time.perf_counter() - started

    started = time.perf_counter()
    slow = [brute_force_min(problem) for problem in problems]
    slow_time = time.perf_counter() - started

    disagreements = sum(1 for a, b in zip(fast, slow) if a != b)
    total_cost = sum(model.cost for model in fast)

    print(f"problems:      {args.count} (vars <= {args.max_vars}, clauses <= {args.max_clauses})")
    print(f"solve_min:     {fast_time:.3f}s total, {fast_time / args.count * 1e3:.3f}ms each")
    print(f"brute force:   {slow_time:.3f}s total, {slow_time / args.count * 1e3:.3f}ms each")
    print(f"disagreements: {disagreements}")
    print(f"total cost:    {total_cost}")
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
