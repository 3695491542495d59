"""Walk the 8-cycle algebra through (k,k), k = 1..12, timing each pass.

    python3 scripts/certify_eight_cycle.py --workers 4 --json eight.json
"""
import argparse
import json
import time

from twograph.catalog import get_entry
from twograph.periodicity import Periodic, check_period, gamma_shift_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--max-k", type=int, default=12)
    ap.add_argument("--samples", type=int, default=10 ** 6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json")
    args = ap.parse_args()

    theta = get_entry("eight-cycle-4x4").theta
    rows = []
    for k in range(1, args.max_k + 1):
        t0 = time.perf_counter()
        pre = check_period(theta, (k, k), "sampled", samples=min(args.samples, 4 ** k),
                           seed=args.seed, workers=args.workers)
        t1 = time.perf_counter()
        v = check_period(theta, (k, k), workers=args.workers)
        t2 = time.perf_counter()
        row = {"k": k, "sampled": pre.tag, "sampled_s": t1 - t0,
               "verdict": v.tag, "exhaustive_s": t2 - t1}
        if isinstance(v, Periodic):
            row["shift_identity"] = gamma_shift_check(theta, v.gamma, "sampled", samples=10 ** 5)
        else:
            row["witness"] = v.witness.to_dict()
        rows.append(row)
        print(f"k={k:2d}  sampled {pre.tag:<11} {t1 - t0:6.2f}s   "
              f"exhaustive {v.tag:<11} {t2 - t1:7.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"workers": args.workers, "seed": args.seed, "rows": rows}, fh, indent=1)


if __name__ == "__main__":
    main()
