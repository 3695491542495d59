"""Named examples of single-vertex 2-graphs with their known behaviour.

The ``expected`` data of each entry is golden: the engines must reproduce it
exactly.  ``cost`` marks entries whose full check takes minutes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .words import ThetaSpec

__all__ = ["CatalogEntry", "catalog_list", "get_entry", "flip_family", "check_entry", "CATALOG"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], ThetaSpec] = field(repr=False)
    description: str = ""
    expected: dict = field(default_factory=dict)
    cost: str = "cheap"

    @property
    def theta(self) -> ThetaSpec:
        return self.build()


def flip_family(m: int) -> ThetaSpec:
    """All flips ``(i,j) <-> (j,i)`` except where exactly one of i, j is 1 or m;
    those pairs form one ``4(m-2)``-cycle."""
    if m < 4:
        raise ValueError("the flip family needs m >= 4")
    ends = {1, m}
    cyc = []
    for r in range(2, m):
        cyc += [(r, 1), (1, r)]
    for r in range(2, m):
        cyc += [(m, r), (r, m)]
    flips = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if (i in ends) == (j in ends):
                flips.append([(i, j), (j, i)])
    return ThetaSpec.from_cycles(m, m, [cyc] + flips)


def _eight_cycle():
    return ThetaSpec.from_cycles(4, 4, [
        [(2, 1), (1, 2), (3, 1), (1, 3), (4, 2), (2, 4), (4, 3), (3, 4)],
        [(1, 4), (4, 1)], [(2, 3), (3, 2)]])


def _five_by_five():
    from .periodicity import sub_two_graph
    words = [(1, 1), (1, 2), (1, 3), (2, 4), (3, 4)]
    return sub_two_graph(_eight_cycle(), 2, 2, words, words)


_ENTRIES = [
    CatalogEntry(
        "flip-2x2", lambda: ThetaSpec.from_cycles(2, 2, [[(1, 2), (2, 1)]]),
        "flip algebra, e_i f_j = f_i e_j",
        {"minimal_period": (1, 1), "gamma": {"1": "1", "2": "2"}}),
    CatalogEntry(
        "square-2x2",
        lambda: ThetaSpec.from_cycles(2, 2, [[(1, 1), (1, 2), (2, 2), (2, 1)]]),
        "square algebra, the 4-cycle ((1,1),(1,2),(2,2),(2,1))",
        {"minimal_period": (2, 2), "not_periodic": [(1, 1)],
         "gamma": {"11": "21", "12": "22", "21": "11", "22": "12"}}),
    CatalogEntry(
        "fwd3cycle-2x2",
        lambda: ThetaSpec.from_cycles(2, 2, [[(1, 1), (1, 2), (2, 1)]]),
        "forward 3-cycle algebra, e_i f_j = f_{i+j} e_j",
        {"certificate": {"side": "alpha", "B": [1, 2], "word": [2]}}),
    CatalogEntry(
        "periodic-2x4",
        lambda: ThetaSpec.from_cycles(2, 4, [[(1, 2), (2, 1), (1, 3)],
                                             [(2, 2), (2, 3), (1, 4)]]),
        "2x4 example with two 3-cycles",
        {"minimal_period": (2, 1),
         "gamma": {"11": "1", "12": "2", "21": "3", "22": "4"}}),
    CatalogEntry(
        "periodic-3x3",
        lambda: ThetaSpec.from_cycles(3, 3, [[(1, 2), (2, 1)],
                                             [(1, 3), (3, 2), (2, 3), (3, 1)]]),
        "3x3 example, periodicity only visible on length-2 words",
        {"minimal_period": (2, 2),
         "gamma": {"11": "11", "12": "12", "13": "23", "21": "21", "22": "22",
                   "23": "13", "31": "31", "32": "32", "33": "33"}}),
    CatalogEntry(
        "eight-cycle-4x4", _eight_cycle,
        "8-cycle algebra with two 2-cycles and four fixed points",
        {"minimal_period": (12, 12),
         "not_periodic": [(k, k) for k in range(1, 12)],
         "constancy_depth": (3, 3)}, cost="minutes"),
    CatalogEntry(
        "sub-5x5-eight-cycle", _five_by_five,
        "2-graph on the length-2 words {11,12,13,24,34} inside the 8-cycle algebra",
        {"minimal_period": (6, 6), "not_periodic": [(k, k) for k in range(1, 6)]}),
    CatalogEntry(
        "eight-cycle-3x3",
        lambda: ThetaSpec.from_cycles(3, 3, [[(1, 3), (1, 1), (3, 1), (3, 3), (2, 3),
                                              (1, 2), (2, 1), (3, 2)]]),
        "3x3 8-cycle: constant after two compositions, yet aperiodic",
        {"certificate": None, "constancy_depth": (1, 2),
         "not_periodic": [(k, k) for k in range(1, 7)]}),
    CatalogEntry(
        "variant-4x4",
        lambda: ThetaSpec.from_cycles(4, 4, [
            [(1, 1), (3, 2), (4, 4), (2, 3)], [(2, 1), (1, 2), (4, 2), (2, 4)],
            [(3, 1), (3, 4), (4, 3), (1, 3)], [(4, 1), (1, 4)]]),
        "4x4 variant with alpha_1 = alpha_2, alpha_3 = alpha_4",
        {"minimal_period": (2, 2), "constancy_depth": (2, 2)}),
    CatalogEntry(
        "flip-family-5", lambda: flip_family(5),
        "5x5 member of the flip family (12-cycle), aperiodic",
        {"certificate": None, "not_periodic": [(k, k) for k in range(1, 9)]}),
    CatalogEntry(
        "flip-family-6", lambda: flip_family(6),
        "6x6 member of the flip family (16-cycle), sampled evidence only",
        {"sampled_period": (24, 24)}),
]

CATALOG = {e.name: e for e in _ENTRIES}


def catalog_list() -> list[str]:
    return [e.name for e in _ENTRIES]


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; try one of {catalog_list()}") from None


def check_entry(entry: CatalogEntry, *, full: bool = False, workers: int = 1,
                samples: int = 100_000, seed: int = 0):
    """Re-derive every expected item of an entry.

    Returns ``[(item, ok, detail)]``; slow items of ``cost="minutes"``
    entries are skipped (``ok`` is None) unless ``full`` is set.
    """
    from .maps import constancy_depth, extract_maps, find_certificate
    from .periodicity import (DEFAULT_LIMIT, NotPeriodic, Periodic, SampledPass,
                              check_period, minimal_period, primitive_pair)

    theta = entry.theta
    exp = entry.expected
    slow = entry.cost == "minutes" and not full
    out = []

    if "minimal_period" in exp:
        want = tuple(exp["minimal_period"])
        if slow:
            out.append(("minimal_period", None, "skipped (slow)"))
        else:
            a0, _ = primitive_pair(theta.m, theta.n)
            v = minimal_period(theta, want[0] // a0, workers=workers)
            got = v.period if isinstance(v, Periodic) else v.tag
            out.append(("minimal_period", got == want, f"got {got}"))
            if "gamma" in exp:
                ok = isinstance(v, Periodic) and v.gamma.to_dict() == exp["gamma"]
                out.append(("gamma", ok, "" if ok else "gamma differs"))
    for k in exp.get("not_periodic", ()):
        k = tuple(k)
        mode = "exhaustive" if theta.m ** k[0] <= DEFAULT_LIMIT else "sampled"
        v = check_period(theta, k, mode, samples=samples, seed=seed, workers=workers)
        out.append((f"not_periodic {k}", isinstance(v, NotPeriodic),
                    v.tag + (f" ({v.witness.kind})" if isinstance(v, NotPeriodic) else "")))
    if "certificate" in exp:
        cert = find_certificate(theta)
        want = exp["certificate"]
        if want is None:
            out.append(("certificate", cert is None, "none" if cert is None else str(cert.to_dict())))
        else:
            got = None if cert is None else {k: cert.to_dict()[k] for k in ("side", "B", "word")}
            out.append(("certificate", got == want, str(got)))
    if "constancy_depth" in exp:
        alphas, betas = extract_maps(theta)
        got = (constancy_depth(alphas, 12), constancy_depth(betas, 12))
        out.append(("constancy_depth", got == tuple(exp["constancy_depth"]), f"got {got}"))
    if "sampled_period" in exp:
        k = tuple(exp["sampled_period"])
        if slow:
            out.append(("sampled_period", None, "skipped (slow)"))
        else:
            v = check_period(theta, k, "sampled", samples=samples, seed=seed, workers=workers)
            detail = v.describe() if isinstance(v, SampledPass) else v.tag
            out.append(("sampled_period", isinstance(v, SampledPass), detail))
    return out
