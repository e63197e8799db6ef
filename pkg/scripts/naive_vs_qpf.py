"""Query cost of the naive orbit walk against simulated period finding on psi(n)."""

import argparse
import sys

from usoq import cli


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-range", default="1..16")
    parser.add_argument("--seeds", default="0..4")
    parser.add_argument("--csv", default="-")
    args = parser.parse_args()
    sys.exit(cli.main(["bench", "--family", "psi", "--n-range", args.n_range, "--seeds", args.seeds,
                       "--methods", "naive-walk,qpf,facet", "--csv", args.csv]))


if __name__ == "__main__":
    main()
