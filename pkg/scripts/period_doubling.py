"""Period of the empty-set orbit for psi(n) and the naive walk's query cost."""

import argparse
import time

from usoq.orientation import psi
from usoq.period import naive_walk_count
from usoq.solvers import with_query_counting


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=18)
    args = parser.parse_args()

    print(f"{'n':>3} {'period':>8} {'queries':>8} {'seconds':>8}")
    prev = None
    for n in range(1, args.max_n + 1):
        start = time.perf_counter()
        oracle = with_query_counting(psi(n))
        period = naive_walk_count(oracle)
        elapsed = time.perf_counter() - start
        print(f"{n:>3} {period:>8} {oracle.count:>8} {elapsed:>8.3f}")
        assert period == 2 ** n
        if prev is not None:
            assert period == 2 * prev
        prev = period


if __name__ == "__main__":
    main()
