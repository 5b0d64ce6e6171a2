"""Break seeded shifted-conjugacy authentication rounds.

For each seed: generate keys, run one honest commitment/response round,
then recover the long-term secret from the public round data alone and
compare with the true secret.
"""

from __future__ import annotations

import argparse
import random

from braidwork.attacks import attack_dehornoy_pair
from braidwork.protocols import dehornoy_commit, dehornoy_keygen, dehornoy_respond
from braidwork.solvers import SolverConfig
from braidwork.subgroups import interval_generators
from braidwork.words import generator, random_word


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=25)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--strands", type=int, default=4)
    parser.add_argument("--secret-len", type=int, default=3)
    args = parser.parse_args()

    alphabet = interval_generators(args.strands, 1, args.strands - 1)
    gens = [generator(args.strands, i) for i in range(1, args.strands)]
    wins = 0
    for offset in range(args.reps):
        seed = args.seed + offset
        keys = dehornoy_keygen(
            strands=args.strands,
            secret_length=args.secret_len,
            base_length=args.secret_len,
            seed=seed,
        )
        nonce = random_word(gens, args.secret_len, random.Random(f"nonce:{seed}"))
        x, x_prime = dehornoy_commit(keys, nonce)
        response = dehornoy_respond(keys, nonce, challenge=1)
        report = attack_dehornoy_pair(
            x,
            x_prime,
            keys.base,
            keys.public_key,
            response,
            SolverConfig(max_length=args.secret_len, alphabet=alphabet, budget=500_000),
            oracle_s=keys.secret,
        )
        wins += report.success and bool(report.harness_verdict)
    print(f"pair attack: {wins}/{args.reps} secrets recovered exactly")


if __name__ == "__main__":
    main()
