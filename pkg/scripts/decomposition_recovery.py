"""Run the decomposition key-recovery pipeline across presets and seeds.

Prints one line per preset with the measured success rate and harness
agreement. Everything is seeded; reruns print identical output.
"""

from __future__ import annotations

import argparse

from braidwork.attacks import attack_decomposition
from braidwork.protocols import ka_run, make_preset
from braidwork.solvers import SolverConfig


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--strands", type=int, default=6)
    parser.add_argument("--secret-len", type=int, default=2)
    parser.add_argument("--max-len", type=int, default=3)
    args = parser.parse_args()

    config = SolverConfig(max_length=args.max_len, budget=200_000)
    for preset in ("klchkp", "cklhc", "generalized", "shpilrain-central"):
        strands = max(args.strands, 8 if preset in ("generalized", "shpilrain-central") else 5)
        proto = make_preset(preset, strands=strands, secret_length=args.secret_len)
        wins = 0
        verdicts = 0
        for offset in range(args.reps):
            run = ka_run(proto, seed=args.seed + offset)
            report = attack_decomposition(run.public, config, oracle=run.secret)
            wins += report.success
            verdicts += bool(report.harness_verdict)
        print(
            f"{preset:18s} n={strands} success {wins}/{args.reps} "
            f"key-correct {verdicts}/{args.reps}"
        )


if __name__ == "__main__":
    main()
