"""Coordinate maps of theta and the aperiodicity criterion built on them.

``theta(i, j) = (beta_j(i), alpha_i(j))``, so ``e_u f_j`` moves ``j`` through
``alpha_{i_1} o ... o alpha_{i_a}`` and ``e_i f_v`` moves ``i`` through
the betas.  If some composition of alphas (or betas) maps a set of size at
least two onto itself the semigroup is aperiodic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .words import ThetaSpec

__all__ = [
    "EndoMap", "MonoidClosure", "AperiodicityCertificate", "extract_maps",
    "compose_along", "closure", "find_certificate", "side_certificate", "constancy_depth",
    "all_compositions",
]


@dataclass(frozen=True)
class EndoMap:
    """A total map of ``{1..d}`` to itself; ``table[x-1]`` is the image of x."""

    table: tuple

    def __post_init__(self):
        d = len(self.table)
        object.__setattr__(self, "table", tuple(self.table))
        if d == 0 or any(not 1 <= y <= d for y in self.table):
            raise ValueError(f"not a self-map of 1..{d}: {self.table}")

    @property
    def size(self):
        return len(self.table)

    def __call__(self, x):
        return self.table[x - 1]

    def after(self, other: "EndoMap") -> "EndoMap":
        """``self o other``."""
        return EndoMap(tuple(self.table[y - 1] for y in other.table))

    def image(self, subset=None):
        xs = range(1, self.size + 1) if subset is None else subset
        return frozenset(self(x) for x in xs)

    @property
    def rank(self):
        return len(set(self.table))

    def is_constant(self):
        return self.rank == 1

    def is_identity(self):
        return self.table == tuple(range(1, self.size + 1))

    def power(self, k):
        out = EndoMap(tuple(range(1, self.size + 1)))
        for _ in range(k):
            out = self.after(out)
        return out

    def idempotent_power(self):
        """Smallest ``k >= 1`` with ``t^k`` idempotent, and that power."""
        k, p = 1, self
        while p.after(p) != p:
            k += 1
            p = self.after(p)
        return k, p

    def eventual_image(self):
        return self.idempotent_power()[1].image()

    def __repr__(self):
        return f"EndoMap({list(self.table)})"


@dataclass(frozen=True)
class MonoidClosure:
    """Everything generated by composing the generators; ``witness[t]`` is a
    shortest generator word (1-based, first index outermost) producing t."""

    generators: tuple
    elements: tuple
    witness: dict

    def __contains__(self, t):
        return t in self.witness

    def __len__(self):
        return len(self.elements)

    def idempotents(self):
        return [t for t in self.elements if t.after(t) == t]


@dataclass(frozen=True)
class AperiodicityCertificate:
    side: str          # 'alpha' (B inside n) or 'beta' (B inside m)
    B: frozenset
    word: tuple
    map: EndoMap

    def verify(self, theta: ThetaSpec) -> bool:
        alphas, betas = extract_maps(theta)
        gens = alphas if self.side == "alpha" else betas
        t = compose_along(gens, self.word)
        return t == self.map and len(self.B) >= 2 and t.image(self.B) == self.B

    def to_dict(self):
        return {"side": self.side, "B": sorted(self.B), "word": list(self.word),
                "map": list(self.map.table)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["side"], frozenset(d["B"]), tuple(d["word"]), EndoMap(tuple(d["map"])))


def extract_maps(theta: ThetaSpec):
    """``(alphas, betas)``: m maps on 1..n and n maps on 1..m."""
    alphas = tuple(EndoMap(tuple(theta(i, j)[1] for j in range(1, theta.n + 1)))
                   for i in range(1, theta.m + 1))
    betas = tuple(EndoMap(tuple(theta(i, j)[0] for i in range(1, theta.m + 1)))
                  for j in range(1, theta.n + 1))
    return alphas, betas


def compose_along(maps: Sequence[EndoMap], word: Sequence[int]) -> EndoMap:
    """``maps[w_1] o maps[w_2] o ... o maps[w_k]`` for a 1-based word w."""
    if len(word) == 0:
        raise ValueError("cannot compose along an empty word")
    out = maps[word[-1] - 1]
    for idx in reversed(word[:-1]):
        out = maps[idx - 1].after(out)
    return out


def closure(generators: Sequence[EndoMap]) -> MonoidClosure:
    if not generators:
        raise ValueError("need at least one generator")
    witness, order = {}, []
    queue = deque()
    for k, g in enumerate(generators, 1):
        if g not in witness:
            witness[g] = (k,)
            order.append(g)
            queue.append(g)
    while queue:
        t = queue.popleft()
        for k, g in enumerate(generators, 1):
            s = t.after(g)
            if s not in witness:
                witness[s] = witness[t] + (k,)
                order.append(s)
                queue.append(s)
    return MonoidClosure(tuple(generators), tuple(order), witness)


def side_certificate(generators: Sequence[EndoMap], side: str = "alpha"):
    """Certificate from one family of maps, or None.

    Among all candidates the one with the shortest word is returned; ties
    go to breadth-first order.
    """
    clo = closure(generators)
    best = None
    for t in clo.elements:
        k, e = t.idempotent_power()
        if e.rank < 2:
            continue
        cost = k * len(clo.witness[t])
        if best is None or cost < best[0]:
            best = (cost, t, k, e)
    if best is None:
        return None
    _, t, k, e = best
    return AperiodicityCertificate(side, e.image(), clo.witness[t] * k, e)


def find_certificate(theta: ThetaSpec) -> Optional[AperiodicityCertificate]:
    """An idempotent of rank >= 2 among the alpha (then beta) compositions."""
    alphas, betas = extract_maps(theta)
    return side_certificate(alphas, "alpha") or side_certificate(betas, "beta")


def _layer_step(layer, generators):
    return frozenset(t.after(g) for t in layer for g in generators)


def constancy_depth(generators: Sequence[EndoMap], k_max: int) -> Optional[int]:
    """Smallest ``k <= k_max`` such that every length-k composition is constant."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    layer = frozenset(generators)
    seen = set()
    for k in range(1, k_max + 1):
        if all(t.is_constant() for t in layer):
            return k
        if layer in seen:
            # layers recur from here on without ever becoming constant
            return None
        seen.add(layer)
        layer = _layer_step(layer, generators)
    return None


def all_compositions(generators: Sequence[EndoMap], length: int):
    """Every composition of exactly ``length`` generators, by explicit words."""
    from itertools import product
    return {compose_along(generators, w)
            for w in product(range(1, len(generators) + 1), repeat=length)}
