"""lambda(S_2(n)) against sqrt(3)/18: optimizer, symmetric closed form, gap, heavy weight."""

import argparse
import csv
import math
from pathlib import Path

from hyperlag.claims import s2n_symmetric_lambda
from hyperlag.hypergraph import s2n
from hyperlag.lagrangian import maximize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--out", type=Path, default=Path("results/s2n_convergence.csv"))
    args = ap.parse_args()

    limit = math.sqrt(3) / 18
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "optimizer", "closed_form", "gap_to_limit", "heavy_weight"])
        for n in list(range(5, args.n_max + 1)) + [100, 1000]:
            closed, a = s2n_symmetric_lambda(n)
            opt = maximize(s2n(n)).value if n <= args.n_max else float("nan")
            w.writerow([n, opt, closed, limit - closed, a])
            print(f"n={n:5d} optimizer={opt:.10f} closed={closed:.10f} gap={limit - closed:.3e} a={a:.6f}")


if __name__ == "__main__":
    main()
