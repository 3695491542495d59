"""Build aperiodic and minimal-symmetry tails for the catalog and report the
symmetries seen in a window."""
import argparse

from twograph.catalog import get_entry
from twograph.tails import (build_aperiodic_tail, build_minimal_symmetry_tail,
                            detect_symmetries, lattice_window, square_violations)

PERIODS = {"flip-2x2": (1, 1), "square-2x2": (2, 2), "periodic-2x4": (2, 1),
           "periodic-3x3": (2, 2), "variant-4x4": (2, 2)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--segments", type=int, default=40)
    ap.add_argument("--window", type=int, default=40)
    ap.add_argument("--bounds", type=int, default=4)
    args = ap.parse_args()
    for name in ("fwd3cycle-2x2", *PERIODS):
        theta = get_entry(name).theta
        if name in PERIODS:
            tail = build_minimal_symmetry_tail(theta, args.segments, period=PERIODS[name])
        else:
            tail = build_aperiodic_tail(theta, args.segments)
        T = min(args.window, tail.depth())
        win = lattice_window(theta, tail, T)
        rep = detect_symmetries(win, args.bounds, args.bounds)
        assert not square_violations(theta, win)
        nonzero = sorted(p for p in rep.passing if p != (0, 0) and p > (0, 0))
        print(f"{name:16s} depth {T:3d}  symmetries (one of each +/- pair): {nonzero}")


if __name__ == "__main__":
    main()
