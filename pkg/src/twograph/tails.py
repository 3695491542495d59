"""Infinite words (tails), their lattice data and shift symmetries.

A tail ``e_{i_0} f_{j_0} e_{i_1} f_{j_1} ...`` labels the edges of the
quarter plane ``s, t <= 0``: ``i[s, t]`` is the e-edge into vertex (s, t)
from (s-1, t) and ``j[s, t]`` the f-edge into (s, t) from (s, t-1).  The tail
fixes the staircase ``i[s, s] = i_|s|``, ``j[s-1, s] = j_|s|`` and every unit
square must satisfy ``theta(i[s, t], j[s-1, t]) = (i[s, t-1], j[s, t])``.

In a written word the rightmost letter acts first, so the word that walks
from (-T, -T) to (s, t) is the *right-hand* factor of ``tau_T``, of degree
``(T - |s|, T - |t|)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .periodicity import Periodic, minimal_period
from .words import (E, F, ThetaSpec, degree, e_word, f_word, format_word, parse_word,
                    refactor)

__all__ = [
    "TailError", "EventuallyPeriodic", "GeneratedPrefix", "LatticeWindow",
    "SymmetryReport", "standard_form", "tail_blocks", "lattice_window",
    "lattice_label_by_refactor", "square_violations", "detect_symmetries",
    "shift_breaks", "shift_segment", "breaking_segment", "pair_schedule", "build_aperiodic_tail",
    "build_minimal_symmetry_tail", "render_window", "tail_from_dict",
]


class TailError(ValueError):
    pass


@dataclass(frozen=True)
class EventuallyPeriodic:
    """Standard-form blocks ``(i_s, j_s)``: a preperiod then a repeating period."""

    preperiod: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(tuple(p) for p in self.preperiod))
        object.__setattr__(self, "period", tuple(tuple(p) for p in self.period))
        if not self.period:
            raise TailError("the period must be non-empty")

    def blocks(self, count):
        pre = list(self.preperiod[:count])
        rest = count - len(pre)
        reps = -(-rest // len(self.period)) if rest > 0 else 0
        return pre + list(self.period * reps)[:max(rest, 0)]

    def to_dict(self):
        return {"type": "eventually-periodic", "preperiod": [list(p) for p in self.preperiod],
                "period": [list(p) for p in self.period]}


@dataclass(frozen=True)
class GeneratedPrefix:
    """A finite prefix of an infinite word, given as concatenated segments."""

    segments: tuple
    description: str = ""
    targets: tuple = ()

    def __post_init__(self):
        segs = tuple(tuple(s) for s in self.segments)
        object.__setattr__(self, "segments", segs)
        for s in segs:
            k, l = degree(s)
            if k == 0 or l == 0:
                raise TailError(f"segment {format_word(s)} lacks a colour")

    @property
    def word(self):
        return tuple(itertools.chain.from_iterable(self.segments))

    def depth(self):
        """Number of standard-form blocks the prefix determines."""
        return min(degree(self.word))

    def to_dict(self):
        return {"type": "generated-prefix", "description": self.description,
                "segments": [format_word(s) for s in self.segments],
                "targets": [list(t) for t in self.targets]}


def tail_from_dict(d):
    if d["type"] == "eventually-periodic":
        return EventuallyPeriodic(d["preperiod"], d["period"])
    if d["type"] == "generated-prefix":
        return GeneratedPrefix(tuple(parse_word(s) for s in d["segments"]),
                               d.get("description", ""),
                               tuple(tuple(t) for t in d.get("targets", ())))
    raise ValueError(f"unknown tail type {d['type']!r}")


def _to_blocks(word):
    return [(word[2 * s].index, word[2 * s + 1].index) for s in range(len(word) // 2)]


def standard_form(theta: ThetaSpec, preperiod, period, *, min_blocks: int = 64):
    """Put ``preperiod . period^infinity`` into alternating e/f blocks.

    A period of degree (k, k) gives an exact :class:`EventuallyPeriodic` tail:
    after each copy of the period the left-over single-colour excess is one
    of finitely many words, so the block sequence cycles.  Other periods give
    a :class:`GeneratedPrefix` long enough for ``min_blocks`` blocks.
    """
    pre, per = tuple(preperiod), tuple(period)
    k, l = degree(per)
    if k == 0 or l == 0:
        raise TailError("the periodic part must contain both e's and f's")
    if k != l:
        copies = 1
        while min(degree(pre + per * copies)) < min_blocks:
            copies += 1
        return GeneratedPrefix((pre + per * copies,), "unbalanced eventually periodic word")
    pending, blocks, seen = list(pre), [], {}
    while tuple(pending) not in seen:
        seen[tuple(pending)] = len(blocks)
        w = tuple(pending) + per
        x, y = degree(w)
        c = min(x, y)
        r = refactor(theta, w, "EF" * c + "E" * (x - c) + "F" * (y - c))
        blocks += _to_blocks(r[:2 * c])
        pending = list(r[2 * c:])
    start = seen[tuple(pending)]
    return EventuallyPeriodic(blocks[:start], blocks[start:])


def tail_blocks(theta: ThetaSpec, tail, count: int):
    """The first ``count`` standard-form blocks."""
    if isinstance(tail, EventuallyPeriodic):
        return tail.blocks(count)
    w = tail.word
    k, l = degree(w)
    if min(k, l) < count:
        raise TailError(f"prefix of degree {(k, l)} gives fewer than {count} blocks")
    r = refactor(theta, w, "EF" * count + "E" * (k - count) + "F" * (l - count))
    return _to_blocks(r[:2 * count])


@dataclass(frozen=True, eq=False)
class LatticeWindow:
    """Labels on ``-T <= s, t <= 0``; ``i_grid[s + T, t + T]``, 0 = undefined."""

    T: int
    i_grid: np.ndarray = field(repr=False)
    j_grid: np.ndarray = field(repr=False)

    def i(self, s, t):
        if not (-self.T < s <= 0 and -self.T <= t <= 0):
            raise IndexError((s, t))
        return int(self.i_grid[s + self.T, t + self.T])

    def j(self, s, t):
        if not (-self.T <= s <= 0 and -self.T < t <= 0):
            raise IndexError((s, t))
        return int(self.j_grid[s + self.T, t + self.T])

    def __eq__(self, other):
        return (isinstance(other, LatticeWindow) and self.T == other.T
                and np.array_equal(self.i_grid, other.i_grid)
                and np.array_equal(self.j_grid, other.j_grid))

    def to_dict(self):
        def grid(a):
            return [[int(x) or None for x in row] for row in a]
        return {"T": self.T, "i_grid": grid(self.i_grid), "j_grid": grid(self.j_grid)}

    @classmethod
    def from_dict(cls, d):
        def grid(rows):
            return np.array([[x or 0 for x in row] for row in rows], dtype=np.int64)
        return cls(d["T"], grid(d["i_grid"]), grid(d["j_grid"]))


def lattice_window(theta: ThetaSpec, tail, T: int) -> LatticeWindow:
    """Fill the window outward from the staircase, one diagonal at a time."""
    if T < 1:
        raise ValueError("T must be at least 1")
    blocks = tail_blocks(theta, tail, T)
    I = np.zeros((T + 1, T + 1), dtype=np.int64)
    J = np.zeros((T + 1, T + 1), dtype=np.int64)
    for s in range(-(T - 1), 1):
        I[s + T, s + T], J[s - 1 + T, s + T] = blocks[-s]
    # cells below the staircase: top and left known
    for d in range(T):
        for s in range(-(T - 1) + d, 1):
            t = s - d
            I[s + T, t - 1 + T], J[s + T, t + T] = theta(I[s + T, t + T], J[s - 1 + T, t + T])
    # cells above it: bottom and right known
    for d in range(-1, -T, -1):
        for s in range(-(T - 1), d + 1):
            t = s - d
            I[s + T, t + T], J[s - 1 + T, t + T] = theta.inverse(I[s + T, t - 1 + T],
                                                                 J[s + T, t + T])
    return LatticeWindow(T, I, J)


def lattice_label_by_refactor(theta: ThetaSpec, blocks, s: int, t: int, color: str) -> int:
    """Read one label by refactoring ``tau_T`` so a single letter of the given
    colour sits between the degree-(|s|,|t|) left factor and the rest."""
    T = len(blocks)
    tau = tuple(itertools.chain.from_iterable((E(i), F(j)) for i, j in blocks))
    ls, lt = -s, -t
    if color == "e":
        pattern = "E" * ls + "F" * lt + "E" + "E" * (T - ls - 1) + "F" * (T - lt)
    else:
        pattern = "E" * ls + "F" * lt + "F" + "E" * (T - ls) + "F" * (T - lt - 1)
    return refactor(theta, tau, pattern)[ls + lt].index


def square_violations(theta: ThetaSpec, window: LatticeWindow):
    """Cells whose two factorizations disagree (should be empty)."""
    T, bad = window.T, []
    for s in range(-(T - 1), 1):
        for t in range(-(T - 1), 1):
            if theta(window.i(s, t), window.j(s - 1, t)) != (window.i(s, t - 1), window.j(s, t)):
                bad.append((s, t))
    return bad


@dataclass(frozen=True)
class SymmetryReport:
    bounds: tuple
    depth: int
    passing: frozenset
    margin: int = 0
    eventual: frozenset = frozenset()

    def to_dict(self):
        return {"bounds": list(self.bounds), "depth": self.depth, "margin": self.margin,
                "passing": sorted(map(list, self.passing)),
                "eventual": sorted(map(list, self.eventual))}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["bounds"]), d["depth"], frozenset(map(tuple, d["passing"])),
                   d["margin"], frozenset(map(tuple, d["eventual"])))


def _shift_agrees(A, p, q):
    R, C = A.shape
    x0, x1 = max(0, -p), min(R, R - p)
    y0, y1 = max(0, -q), min(C, C - q)
    if x0 >= x1 or y0 >= y1:
        return True
    return np.array_equal(A[x0 + p:x1 + p, y0 + q:y1 + q], A[x0:x1, y0:y1])


def detect_symmetries(window: LatticeWindow, p_max: int, q_max: int,
                      margin: Optional[int] = None) -> SymmetryReport:
    """All ``(p, q)`` within bounds with ``i[s+p, t+q] = i[s, t]`` and the same
    for j, wherever both cells lie in the window.

    The eventual variant only compares cells with ``s, t <= -margin``.
    """
    T = window.T
    if abs(p_max) >= T or abs(q_max) >= T:
        raise ValueError(f"bounds {(p_max, q_max)} do not fit a window of depth {T}")
    if margin is None:
        margin = T // 2
    p_max, q_max = abs(p_max), abs(q_max)
    # defined parts only: i has s > -T, j has t > -T
    I = window.i_grid[1:, :]
    J = window.j_grid[:, 1:]

    def passes(p, q, cut):
        i_part = I[:I.shape[0] - cut, :I.shape[1] - cut]
        j_part = J[:J.shape[0] - cut, :J.shape[1] - cut]
        return _shift_agrees(i_part, p, q) and _shift_agrees(j_part, p, q)

    strict, eventual = set(), set()
    for p in range(-p_max, p_max + 1):
        for q in range(-q_max, q_max + 1):
            if passes(p, q, 0):
                strict.add((p, q))
            if margin < T - max(abs(p), abs(q)) and passes(p, q, margin):
                eventual.add((p, q))
    return SymmetryReport((p_max, q_max), T, frozenset(strict), margin, frozenset(eventual))


# builders ---------------------------------------------------------------------

def shift_breaks(theta: ThetaSpec, segment, a: int, b: int) -> bool:
    """Whether ``segment`` at the start of a tail rules out the ``(a,-b)`` shift.

    Strip ``a`` e's (resp. ``b`` f's) from the front of the segment; the two
    remainders are the tails at two vertices that differ by ``(a,-b)``.  If
    their leading e-blocks or f-blocks differ, no continuation can repair it.
    """
    k, l = degree(segment)
    if k < a or l < b:
        return False
    ef = refactor(theta, segment, "E" * k + "F" * l)
    fe = refactor(theta, segment, "F" * l + "E" * k)
    r1 = ef[a:]          # degree (k - a, l)
    r2 = fe[b:]          # degree (k, l - b)
    lead_e1 = ef[a:k]
    lead_e2 = refactor(theta, r2, "E" * k + "F" * (l - b))[:k - a]
    lead_f1 = refactor(theta, r1, "F" * l + "E" * (k - a))[:l - b]
    lead_f2 = fe[b:l]
    return lead_e1 != lead_e2 or lead_f1 != lead_f2


def breaking_segment(theta: ThetaSpec, a: int, b: int, search_bound: int = 100_000):
    """First word of shape ``e_x f_y e_z`` or ``f_y e_x f_z`` (``|x| = |z| = a``,
    ``|y| = b``) that rules out the ``(a,-b)`` shift, or None within the bound."""
    m, n = theta.m, theta.n
    ms = list(itertools.product(range(1, m + 1), repeat=a))
    ns = list(itertools.product(range(1, n + 1), repeat=b))
    shapes = (
        ((e_word(x) + f_word(y) + e_word(z)) for y in ns for x in ms for z in ms),
        ((f_word(y) + e_word(x) + f_word(z)) for x in ms for y in ns for z in ns),
    )
    tried = 0
    for seg in itertools.chain(*shapes):
        if tried >= search_bound:
            return None
        tried += 1
        if shift_breaks(theta, seg, a, b):
            return seg
    return None


def pair_schedule():
    """Every non-zero ``(p, q)`` up to sign, each infinitely often.

    Round r lists all pairs with ``max(|p|, |q|) <= r``.  One of ``(p, q)``
    and ``(-p, -q)`` suffices since the symmetries form a group.
    """
    r = 1
    while True:
        pairs = [(p, q) for p in range(0, r + 1) for q in range(-r, r + 1)
                 if p > 0 or q > 0]
        pairs.sort(key=lambda pq: (max(abs(pq[0]), abs(pq[1])), abs(pq[0]) + abs(pq[1]), pq))
        yield from pairs
        r += 1


def shift_segment(p, q):
    """``e_1^p f_1^q e_2``, or ``f_1^q f_2`` when p = 0 (for pq >= 0)."""
    if p == 0:
        return f_word([1] * q + [2])
    return e_word([1] * p) + f_word([1] * q) + e_word([2])


def _build(theta, segment_count, search_bound, skip, description):
    if theta.m < 2 or theta.n < 2:
        raise TailError("tail construction needs m, n >= 2")
    segments, targets, notices, cache = [], [], [], {}
    balance = 0  # e-degree minus f-degree of the prefix so far
    for p, q in pair_schedule():
        if len(segments) >= segment_count:
            break
        if skip(p, q):
            continue
        if p * q >= 0:
            seg = shift_segment(p, q)
        else:
            key = (p, -q)
            if key not in cache:
                cache[key] = breaking_segment(theta, p, -q, search_bound)
            seg = cache[key]
            if seg is None:
                notices.append((p, q))
                continue
        k, l = degree(seg)
        balance += k - l
        # pad so the prefix stays balanced and every segment fits a square window
        if balance > 0:
            seg, balance = seg + f_word([1] * balance), 0
        elif balance < 0:
            seg, balance = seg + e_word([1] * -balance), 0
        segments.append(seg)
        targets.append((p, q))
    if notices:
        description += f"; no breaking segment within the search bound for {notices}"
    return GeneratedPrefix(tuple(segments), description, tuple(targets))


def build_aperiodic_tail(theta: ThetaSpec, segment_count: int, search_bound: int = 100_000):
    """A prefix of a tail with no shift symmetry other than (0, 0)."""
    return _build(theta, segment_count, search_bound, lambda p, q: False,
                  f"aperiodic construction, {segment_count} segments")


def build_minimal_symmetry_tail(theta: ThetaSpec, segment_count: int,
                                search_bound: int = 100_000, period=None, k_max: int = 12):
    """A prefix of a tail whose only symmetries are the multiples of the
    minimal period ``(a, -b)``."""
    if period is None:
        verdict = minimal_period(theta, k_max)
        if not isinstance(verdict, Periodic):
            raise TailError(f"no verified minimal period (got {verdict.tag})")
        period = verdict.period
    a, b = period

    def skip(p, q):
        # multiples of (a, -b) cannot be broken
        return p % a == 0 and q == -(p // a) * b and p > 0

    return _build(theta, segment_count, search_bound, skip,
                  f"minimal symmetry ({a},-{b}) construction, {segment_count} segments")


def render_window(window: LatticeWindow) -> str:
    """ASCII picture: one ``i/j`` cell per vertex, t = 0 on the top row."""
    T = window.T
    rows = []
    for t in range(0, -T - 1, -1):
        cells = []
        for s in range(-T, 1):
            i = window.i_grid[s + T, t + T]
            j = window.j_grid[s + T, t + T]
            cells.append(f"{i if i else '.'}/{j if j else '.'}")
        rows.append(f"{t:>4} | " + " ".join(f"{c:>5}" for c in cells))
    header = "       " + " ".join(f"{s:>5}" for s in range(-T, 1))
    return "\n".join([header] + rows)
