"""The m x m flip family: flips (i,j) <-> (j,i) plus one long cycle."""
from __future__ import annotations

import time

from .catalog import flip_family
from .periodicity import (DEFAULT_LIMIT, NotPeriodic, Periodic, SampledPass,
                          UndecidedUpToBound, check_period)
from .report import Report, fill_verdict, theta_info
from .words import e_word, f_word, format_word, split_fe

MAX_FAMILY = 12


def odd_identity(theta, k):
    """FE normal form of ``e_1^{2k+1} f_2^{2k+1}`` and the expected
    ``f_1^{k+1} f_2 f_m^{k-1} . e_m e_2^{2k}``."""
    m = theta.m
    v, u = split_fe(theta, e_word([1] * (2 * k + 1)) + f_word([2] * (2 * k + 1)))
    want_v = tuple([1] * (k + 1) + [2] + [m] * (k - 1))
    want_u = tuple([m] + [2] * (2 * k))
    return tuple(v), tuple(u), (tuple(v), tuple(u)) == (want_v, want_u)


def run_family(m: int, mode: str = "auto", *, samples: int = 100_000, seed: int = 0,
               workers: int = 1, limit: int = DEFAULT_LIMIT, max_k: int = 8,
               command=None) -> Report:
    """Even m = 2k+2: test the (12k, 12k) candidate.  Odd m: collect the
    normal-form identity and the failing (k, k) candidates up to ``max_k``."""
    if not 4 <= m <= MAX_FAMILY:
        raise ValueError(f"family size must lie in 4..{MAX_FAMILY}")
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    theta = flip_family(m)
    rep = Report(command or ["family", "--m", str(m)], theta=theta_info(theta))
    t0 = time.perf_counter()
    if m % 2 == 0:
        a = 12 * (m - 2) // 2
        use = mode
        if mode == "auto":
            use = "exhaustive" if m ** a <= limit else "sampled"
        v = check_period(theta, (a, a), use, samples=samples, seed=seed, workers=workers,
                         limit=limit)
        fill_verdict(rep, v)
        rep.extra["mode"] = use
        if use == "sampled":
            rep.seed = seed
    else:
        ids = {}
        for k in range(1, 5):
            v, u, ok = odd_identity(theta, k)
            ids[str(k)] = {"f": format_word(f_word(v)), "e": format_word(e_word(u)), "holds": ok}
        rep.extra["nf_identity"] = ids
        failed, tested = [], []
        for k in range(1, max_k + 1):
            use = mode if mode != "auto" else ("exhaustive" if m ** k <= limit else "sampled")
            v = check_period(theta, (k, k), use, samples=samples, seed=seed,
                             workers=workers, limit=limit)
            tested.append((k, k))
            if isinstance(v, NotPeriodic):
                failed.append([k, k])
            elif isinstance(v, (Periodic, SampledPass)):
                fill_verdict(rep, v)
                break
        else:
            fill_verdict(rep, UndecidedUpToBound(max_k, tuple(tested)))
        rep.extra["not_periodic"] = failed
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep
