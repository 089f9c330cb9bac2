"""Scan small n for several forbidden graphs and record verdicts as CSV.

Graphs: S_{2,2}, K_4^{3-} + S_{2,1}, F_5 + single edge, and the 6-vertex
non-perfect construction (expected to produce a counterexample at n = 6).
"""

import argparse
import logging
from pathlib import Path

from hyperlag.hypergraph import construct, disjoint_union, nonperfect_forbidden, star
from hyperlag.search import SearchBudget, lambda_perfect_scan, write_csv

CASES = {
    "s22": (lambda: star(2), 7),
    "k4minus_s21": (lambda: disjoint_union(construct("complete-minus-edge", r=3, t=4), star(1)), 7),
    "f5_e": (lambda: disjoint_union(construct("f5"), construct("single-edge", r=3)), 8),
    "nonperfect_t6": (lambda: nonperfect_forbidden(6), 6),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", nargs="*", default=list(CASES))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--iterations", type=int, default=300)
    ap.add_argument("--restarts", type=int, default=4)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/scans"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    budget = SearchBudget(iterations=args.iterations, restarts=args.restarts, seed=args.seed, workers=args.workers)
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.cases:
        make, n_max = CASES[name]
        reports = lambda_perfect_scan(make(), n_max, budget, out_dir=args.out / name)
        write_csv(reports, args.out / f"{name}.csv")
        for rep in reports:
            print(f"{name:14s} n={rep.n:2d} best={rep.best_lambda:.10f} target={float(rep.target):.10f} {rep.verdict}")


if __name__ == "__main__":
    main()
