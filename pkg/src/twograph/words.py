"""Words in a single-vertex 2-graph semigroup and the commutation rewriting.

The semigroup has generators ``e_1..e_m`` and ``f_1..f_n`` subject only to
``e_i f_j = f_j' e_i'`` where ``theta(i, j) = (i', j')``.  Every word can be
refactored to any colour pattern of the same degree, uniquely.

All indices are 1-based.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "ThetaError", "ThetaSpec", "Letter", "E", "F", "parse_theta", "parse_word",
    "format_word", "e_word", "f_word", "degree", "swap_ef", "swap_fe",
    "normal_form", "refactor", "pattern_of", "split_ef", "split_fe",
]


class ThetaError(ValueError):
    """Malformed or invalid theta description."""


class Letter(NamedTuple):
    color: str  # 'e' or 'f'
    index: int

    def __str__(self):
        return f"{self.color}{self.index}"


def E(i: int) -> Letter:
    return Letter("e", i)


def F(j: int) -> Letter:
    return Letter("f", j)


Word = tuple  # tuple[Letter, ...]


def e_word(u: Iterable[int]) -> Word:
    return tuple(E(i) for i in u)


def f_word(v: Iterable[int]) -> Word:
    return tuple(F(j) for j in v)


@dataclass(frozen=True)
class ThetaSpec:
    """A permutation of ``m x n`` defining the commutation relations.

    ``forward[i-1][j-1] == (i', j')`` encodes ``e_i f_j = f_j' e_i'``.
    """

    m: int
    n: int
    forward: tuple
    backward: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m, n = self.m, self.n
        if m < 1 or n < 1:
            raise ThetaError("m and n must be positive")
        if m == 1 and n == 1:
            raise ThetaError("m = n = 1 is not a valid 2-graph")
        fwd = tuple(tuple(tuple(p) for p in row) for row in self.forward)
        if len(fwd) != m or any(len(row) != n for row in fwd):
            raise ThetaError("forward table has the wrong shape")
        back = [[None] * n for _ in range(m)]
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                i2, j2 = fwd[i - 1][j - 1]
                if not (1 <= i2 <= m and 1 <= j2 <= n):
                    raise ThetaError(f"theta({i},{j}) = ({i2},{j2}) out of range")
                if back[i2 - 1][j2 - 1] is not None:
                    raise ThetaError(f"({i2},{j2}) is hit twice; theta is not a bijection")
                back[i2 - 1][j2 - 1] = (i, j)
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "backward", tuple(tuple(row) for row in back))

    @classmethod
    def from_mapping(cls, m, n, mapping):
        table = [[mapping.get((i, j), (i, j)) for j in range(1, n + 1)]
                 for i in range(1, m + 1)]
        return cls(m, n, table)

    @classmethod
    def from_cycles(cls, m, n, cycles):
        """Each cycle maps every listed pair to the next, the last to the first."""
        mapping = {}
        for cyc in cycles:
            cyc = [tuple(p) for p in cyc]
            for k, p in enumerate(cyc):
                if not (1 <= p[0] <= m and 1 <= p[1] <= n):
                    raise ThetaError(f"pair {p} out of range for m={m}, n={n}")
                if p in mapping:
                    raise ThetaError(f"pair {p} appears in more than one cycle")
                mapping[p] = cyc[(k + 1) % len(cyc)]
        return cls.from_mapping(m, n, mapping)

    @classmethod
    def identity(cls, m, n):
        return cls.from_mapping(m, n, {})

    def __call__(self, i, j):
        return self.forward[i - 1][j - 1]

    def inverse(self, i, j):
        return self.backward[i - 1][j - 1]

    def pairs(self):
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    def cycles(self):
        """Non-trivial cycles, each starting at its smallest pair."""
        seen, out = set(), []
        for p in self.pairs():
            if p in seen:
                continue
            cyc, q = [], p
            while q not in seen:
                seen.add(q)
                cyc.append(q)
                q = self(*q)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def swapped(self) -> "ThetaSpec":
        """The same semigroup with the roles of the e's and f's exchanged.

        ``e_i f_j = f_j' e_i'`` read right to left is ``E_j' F_i' = F_i E_j``
        in the renamed generators ``E := f``, ``F := e``.
        """
        mapping = {}
        for i, j in self.pairs():
            i2, j2 = self(i, j)
            mapping[(j2, i2)] = (j, i)
        return ThetaSpec.from_mapping(self.n, self.m, mapping)

    def relabel(self, perm_e, perm_f) -> "ThetaSpec":
        """Rename ``e_i -> e_{perm_e[i-1]}`` and ``f_j -> f_{perm_f[j-1]}``."""
        mapping = {}
        for i, j in self.pairs():
            i2, j2 = self(i, j)
            mapping[(perm_e[i - 1], perm_f[j - 1])] = (perm_e[i2 - 1], perm_f[j2 - 1])
        return ThetaSpec.from_mapping(self.m, self.n, mapping)

    def canonical_text(self) -> str:
        lines = [f"{self.m} {self.n}"]
        lines += [f"{i} {j} {i2} {j2}" for (i, j) in self.pairs() for (i2, j2) in [self(i, j)]]
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()

    def to_text(self) -> str:
        out = [f"m {self.m}", f"n {self.n}"]
        for cyc in self.cycles():
            out.append("cycle " + " ".join(f"({i},{j})" for i, j in cyc))
        return "\n".join(out) + "\n"

    # 0-based numpy tables for the compiled kernels
    @cached_property
    def tables(self):
        ti = np.empty((self.m, self.n), dtype=np.int64)
        tj = np.empty((self.m, self.n), dtype=np.int64)
        for i, j in self.pairs():
            i2, j2 = self(i, j)
            ti[i - 1, j - 1] = i2 - 1
            tj[i - 1, j - 1] = j2 - 1
        return ti, tj

    @cached_property
    def inverse_tables(self):
        ti = np.empty((self.m, self.n), dtype=np.int64)
        tj = np.empty((self.m, self.n), dtype=np.int64)
        for i, j in self.pairs():
            i0, j0 = self.inverse(i, j)
            ti[i - 1, j - 1] = i0 - 1
            tj[i - 1, j - 1] = j0 - 1
        return ti, tj


_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_theta(text: str) -> ThetaSpec:
    """Parse the line-oriented theta format.

    ::

        m 2
        n 4
        cycle (1,2) (2,1) (1,3)   # pairs map to the next one, last to first

    Lines may also be joined with ``;``.  Pairs in no cycle are fixed.
    """
    m = n = None
    cycles = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for stmt in raw.split("#", 1)[0].split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            key, _, rest = stmt.partition(" ")
            rest = rest.strip()
            if key in ("m", "n"):
                if not re.fullmatch(r"\d+", rest):
                    raise ThetaError(f"line {lineno}: expected '{key} <int>'")
                if (m if key == "m" else n) is not None:
                    raise ThetaError(f"line {lineno}: '{key}' given twice")
                if key == "m":
                    m = int(rest)
                else:
                    n = int(rest)
            elif key == "cycle":
                pairs = _PAIR.findall(rest)
                if not pairs or _PAIR.sub("", rest).strip():
                    raise ThetaError(f"line {lineno}: malformed cycle {rest!r}")
                cycles.append([(int(a), int(b)) for a, b in pairs])
            else:
                raise ThetaError(f"line {lineno}: unknown statement {stmt!r}")
    if m is None or n is None:
        raise ThetaError("both 'm' and 'n' must be given")
    return ThetaSpec.from_cycles(m, n, cycles)


_LETTER = re.compile(r"([ef])_?\{?(\d+)\}?")


def parse_word(text: str) -> Word:
    """``"e1 f2 e2"`` (spaces optional, ``e_1`` accepted) -> letters."""
    text = text.strip()
    if text in ("", "∅", "0"):
        return ()
    letters, pos = [], 0
    for mo in _LETTER.finditer(text):
        if text[pos:mo.start()].strip():
            raise ValueError(f"cannot parse word {text!r}")
        letters.append(Letter(mo.group(1), int(mo.group(2))))
        pos = mo.end()
    if text[pos:].strip():
        raise ValueError(f"cannot parse word {text!r}")
    return tuple(letters)


def format_word(w: Word) -> str:
    return " ".join(map(str, w)) if w else "∅"


def degree(w: Word) -> tuple[int, int]:
    k = sum(1 for x in w if x.color == "e")
    return k, len(w) - k


def pattern_of(w: Word) -> str:
    return "".join("E" if x.color == "e" else "F" for x in w)


def swap_ef(theta: ThetaSpec, i: int, j: int) -> tuple[int, int]:
    """``e_i f_j = f_j' e_i'``; returns ``(j', i')``."""
    i2, j2 = theta(i, j)
    return j2, i2


def swap_fe(theta: ThetaSpec, j: int, i: int) -> tuple[int, int]:
    """``f_j e_i = e_i0 f_j0``; returns ``(i0, j0)``."""
    return theta.inverse(i, j)


def _check(theta, w):
    for x in w:
        bound = theta.m if x.color == "e" else theta.n
        if x.color not in ("e", "f") or not 1 <= x.index <= bound:
            raise ValueError(f"letter {x} out of range")


def split_fe(theta: ThetaSpec, w: Word) -> tuple[list, list]:
    """Rewrite ``w = f_v e_u``; returns the index lists ``(v, u)``."""
    fs, es = [], []
    fwd = theta.forward
    for x in w:
        if x.color == "e":
            es.append(x.index)
            continue
        j = x.index
        # sweep f_j leftwards through the e-block, rightmost e first
        for t in range(len(es) - 1, -1, -1):
            es[t], j = fwd[es[t] - 1][j - 1]
        fs.append(j)
    return fs, es


def split_ef(theta: ThetaSpec, w: Word) -> tuple[list, list]:
    """Rewrite ``w = e_u f_v``; returns the index lists ``(u, v)``."""
    es, fs = [], []
    back = theta.backward
    for x in w:
        if x.color == "f":
            fs.append(x.index)
            continue
        i = x.index
        for t in range(len(fs) - 1, -1, -1):
            i, fs[t] = back[i - 1][fs[t] - 1]
        es.append(i)
    return es, fs


def normal_form(theta: ThetaSpec, w: Word, target: str = "EF") -> Word:
    """All e's first (``"EF"``) or all f's first (``"FE"``)."""
    _check(theta, w)
    if target == "EF":
        u, v = split_ef(theta, w)
        return e_word(u) + f_word(v)
    if target == "FE":
        v, u = split_fe(theta, w)
        return f_word(v) + e_word(u)
    raise ValueError(f"target must be 'EF' or 'FE', not {target!r}")


def refactor(theta: ThetaSpec, w: Word, pattern: Sequence[str] | str) -> Word:
    """The unique factorization of ``w`` with the given colour pattern."""
    _check(theta, w)
    pattern = "".join(pattern).upper()
    if set(pattern) - {"E", "F"}:
        raise ValueError(f"pattern may only contain E and F: {pattern!r}")
    if (pattern.count("E"), pattern.count("F")) != degree(w):
        raise ValueError(f"pattern {pattern!r} does not match degree {degree(w)}")
    out = list(w)
    for x, want in enumerate(pattern):
        color = want.lower()
        if out[x].color == color:
            continue
        y = x + 1
        while out[y].color != color:
            y += 1
        # bubble the letter at y leftwards across a run of the other colour
        for z in range(y, x, -1):
            left, right = out[z - 1], out[z]
            if left.color == "e":  # e_i f_j -> f_j' e_i'
                i2, j2 = theta(left.index, right.index)
                out[z - 1], out[z] = F(j2), E(i2)
            else:  # f_j e_i -> e_i0 f_j0
                i0, j0 = theta.inverse(right.index, left.index)
                out[z - 1], out[z] = E(i0), F(j0)
    return tuple(out)
