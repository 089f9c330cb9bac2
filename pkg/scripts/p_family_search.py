"""Search P_1..P_4-free 3-graphs for n in a range and compare with S_2(n) and sqrt(3)/18."""

import argparse
import csv
import math
from pathlib import Path

from hyperlag.hypergraph import construct, s2n
from hyperlag.lagrangian import maximize
from hyperlag.search import SearchBudget, search, write_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="*", default=[7, 8, 9, 10])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--iterations", type=int, default=300)
    ap.add_argument("--restarts", type=int, default=4)
    ap.add_argument("--out", type=Path, default=Path("results/p_family"))
    args = ap.parse_args()

    family = [construct(p) for p in ("p1", "p2", "p3", "p4")]
    limit = math.sqrt(3) / 18
    args.out.mkdir(parents=True, exist_ok=True)
    rows = []
    for n in args.n:
        rep = search(family, n, SearchBudget(iterations=args.iterations, restarts=args.restarts, seed=args.seed))
        write_report(rep, args.out / f"n{n}.json", args.out / f"n{n}_best.hg")
        s2 = maximize(s2n(n)).value
        rows.append([n, rep.best_lambda, s2, limit, rep.verdict])
        print(f"n={n:2d} search={rep.best_lambda:.10f} S_2(n)={s2:.10f} sqrt3/18={limit:.10f} "
              f"edges={len(rep.best_graph)} {rep.verdict}")
    with open(args.out / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "search_best", "s2n_lambda", "sqrt3_over_18", "verdict"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
