"""Seeded scan: for each (n, eps) try to sample a two-clique graph with at most
floor(eps n) non-neighbours per vertex and no K_t minor, t = ceil((1+2eps)n).
Usage: python scripts/steiner_scan.py --seed 1 --n 4 5 6 --eps 1/4 1/3 1/2"""
from __future__ import annotations

import argparse
import time
from fractions import Fraction

from hadlist.steiner import sample_steiner, steiner_t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--eps", type=Fraction, nargs="+", default=[Fraction(1, 4), Fraction(1, 3)])
    ap.add_argument("--budget", type=int, default=200, help="sampling attempts per cell")
    args = ap.parse_args()
    print(f"{'n':>3} {'eps':>6} {'t':>4}  result")
    for n in args.n:
        for eps in args.eps:
            start = time.perf_counter()
            h = sample_steiner(n, eps, args.seed, budget=args.budget)
            secs = time.perf_counter() - start
            what = "none within budget" if h is None else f"found, {h.graph.m} edges"
            print(f"{n:>3} {str(eps):>6} {steiner_t(n, eps):>4}  {what} ({secs:.2f}s)")


if __name__ == "__main__":
    main()
