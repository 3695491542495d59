"""Timing workloads for the compiled passes."""
from __future__ import annotations

import os
import statistics
import time

import numpy as np

from . import _kernels as K
from .catalog import get_entry
from .periodicity import check_period


def _eight():
    return get_entry("eight-cycle-4x4").theta


def _exhaustive12(size, workers, seed):
    v = check_period(_eight(), (12, 12), "exhaustive", workers=workers)
    return 4 ** 12, {"verdict": v.tag}


def _sampled_million(size, workers, seed):
    size = size or 1_000_000
    v = check_period(_eight(), (12, 12), "sampled", samples=size, seed=seed, workers=workers)
    return size, {"verdict": v.tag, "seed": seed}


def _nf_micro(size, workers, seed):
    size = size or 1_000_000
    theta = _eight()
    ti, tj = theta.tables
    rng = np.random.default_rng(seed)
    colors = rng.permutation(np.array([1] * 12 + [0] * 12, dtype=np.int64))
    words = rng.integers(0, 4, (size, 24))  # m = n = 4, so one range serves both colours
    fout = np.empty((size, 12), np.int64)
    eout = np.empty((size, 12), np.int64)
    t0 = time.perf_counter()
    swaps = K.fe_normal_forms(ti, tj, words, colors, fout, eout)
    dt = time.perf_counter() - t0
    return size, {"swaps": int(swaps), "swaps_per_s": swaps / dt if dt else float("inf")}


WORKLOADS = {
    "eight-cycle-exhaustive-12": _exhaustive12,
    "nf-microbench": _nf_micro,
    "sampled-million": _sampled_million,
}


def bench(name: str, repetitions: int = 1, *, size=None, workers: int = 1, seed: int = 0):
    if name not in WORKLOADS:
        raise KeyError(f"unknown workload {name!r}; choose from {sorted(WORKLOADS)}")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    fn = WORKLOADS[name]
    if name != "eight-cycle-exhaustive-12":
        fn(1000, workers, seed)  # compile before timing
    times, info, words = [], {}, 0
    for _ in range(repetitions):
        t0 = time.perf_counter()
        words, info = fn(size, workers, seed)
        times.append(time.perf_counter() - t0)
    best = min(times)
    return {"workload": name, "repetitions": repetitions, "workers": workers,
            "cpus": os.cpu_count(), "words": words, "seconds": times,
            "best_s": best, "mean_s": statistics.fmean(times),
            "words_per_s": words / best if best else float("inf"), **info}
