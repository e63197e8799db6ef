"""Single-attempt success rate of simulated period finding on random USOs.

Sweeps the sample budget and counting-register width and reports how often
the recovered sink is correct, plus the mean oracle and validation cost.
"""

import argparse

import numpy as np

from usoq.orientation import random_uso
from usoq.qpf import QpfConfig, RecoveryExhausted, find_sink
from usoq.verifier import global_sink


def run(n, t, samples, trials):
    hits, oracle, validation = 0, [], []
    for seed in range(trials):
        m = random_uso(n, seed)
        try:
            search = find_sink(m, QpfConfig(t=t, samples=samples, seed=seed, attempts=1))
        except RecoveryExhausted:
            continue
        hits += search.sink == global_sink(m)
        oracle.append(search.oracle_calls)
        validation.append(search.validation_calls)
    return hits / trials, np.mean(oracle or [0]), np.mean(validation or [0])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--samples", default="1,2,4,8,20")
    args = parser.parse_args()

    n = args.n
    widths = sorted({n, n + 2, 2 * n + 1})
    print(f"n={n}, trials={args.trials}")
    print(f"{'t':>3} {'samples':>7} {'success':>8} {'oracle':>7} {'valid.':>7}")
    for t in widths:
        for samples in map(int, args.samples.split(",")):
            rate, oracle, validation = run(n, t, samples, args.trials)
            print(f"{t:>3} {samples:>7} {rate:>8.3f} {oracle:>7.2f} {validation:>7.2f}")


if __name__ == "__main__":
    main()
