"""Measure length-descent success rates on conjugacy-shaped transcripts.

Sweeps seeds at a fixed strand count and positive secret length and
reports the empirical recovery rate of the greedy descent solver.
"""

from __future__ import annotations

import argparse
import dataclasses

from braidwork.extractors import build_mscsp_dhdp
from braidwork.protocols import ka_run, make_preset
from braidwork.solvers import SolverConfig, solve_length_descent, verify_solution


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--strands", type=int, default=10)
    parser.add_argument("--secret-len", type=int, default=5)
    parser.add_argument("--restarts", type=int, default=6)
    args = parser.parse_args()

    config = dataclasses.replace(
        make_preset("klchkp", strands=args.strands, secret_length=args.secret_len),
        positive_only=True,
    )
    wins = 0
    for offset in range(args.reps):
        seed = args.seed + offset
        run = ka_run(config, seed=seed)
        instance = build_mscsp_dhdp(run.public, "a")
        report = solve_length_descent(
            instance,
            SolverConfig(
                max_length=args.secret_len,
                restarts=args.restarts,
                seed=seed,
                length_functional="difference",
            ),
        )
        wins += report.solved and all(verify_solution(instance, report.solution))
    print(
        f"length descent: {wins}/{args.reps} recovered "
        f"(n={args.strands}, positive secrets of length {args.secret_len})"
    )


if __name__ == "__main__":
    main()
