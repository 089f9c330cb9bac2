"""Run the claims battery and write a JSON report next to the printed table."""

import argparse
import json
import sys
from pathlib import Path

from hyperlag.claims import VIOLATED, format_table, run_battery


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scope", default="all")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/battery.json"))
    args = ap.parse_args()

    results = run_battery(args.scope, workers=args.workers)
    print(format_table(results))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps([r.to_dict() for r in results], indent=2, ensure_ascii=False) + "\n")
    return 1 if any(r.status == VIOLATED for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
