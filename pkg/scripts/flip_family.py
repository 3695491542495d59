"""Flip family survey: the odd-m normal form identity and (12k,12k)
evidence for even m = 2k + 2."""
import argparse

from twograph.family import run_family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="5,6,7,8")
    ap.add_argument("--samples", type=int, default=10 ** 5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for m in map(int, args.sizes.split(",")):
        rep = run_family(m, samples=args.samples, seed=args.seed, workers=args.workers)
        print(f"m={m}: {rep.message}  [{rep.elapsed_ms / 1000:.1f} s]")
        for k, row in rep.extra.get("nf_identity", {}).items():
            print(f"   k={k}: {row['f']} . {row['e']}  ({'ok' if row['holds'] else 'differs'})")


if __name__ == "__main__":
    main()
