"""Deciding (a,-b)-periodicity.

The semigroup is (a,-b)-periodic exactly when ``m^a = n^b`` and there is a
bijection ``gamma: m^a -> n^b`` with ``e_u f_v = f_gamma(u) e_gamma^-1(v)``.
:func:`check_period` decides this with one pass over ``m^a``: for each ``u0``
and each start letter ``j0`` the chain

    e_{u_t} f_{j_t} = f_{j_{t+1}} e_{u_{t+1}},   t = 0..b

must return to ``(j0, u0)`` and spell the same ``v0 = j_1..j_b`` for every
``j0``; then every ``v0`` run backwards from each ``i0`` must give ``u0``
back.  :func:`brute_force_oracle` checks the defining identity over all
``m^a * n^b`` pairs instead and is kept for cross-validation.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels as K
from .maps import AperiodicityCertificate, find_certificate
from .words import ThetaSpec, e_word, f_word, split_fe

__all__ = [
    "DEFAULT_LIMIT", "ORACLE_LIMIT", "DEGENERATE", "EnumerationLimitError",
    "CandidateError", "ClosureViolation", "PeriodCandidate", "GammaTable",
    "Witness", "Periodic", "NotPeriodic", "NoCandidates", "UndecidedUpToBound",
    "DegeneratePeriod", "SampledPass", "PassResult", "primitive_pair",
    "forward_pass", "reverse_pass", "check_period", "minimal_period",
    "gamma_shift_check", "half_symmetry", "brute_force_oracle",
    "sub_two_graph", "replay_witness", "permutation_order", "encode", "decode",
]

DEFAULT_LIMIT = 1 << 26
ORACLE_LIMIT = 1 << 20
CHUNK = 1 << 16
SAMPLE_CHUNK = 1 << 14


class EnumerationLimitError(RuntimeError):
    pass


class CandidateError(ValueError):
    pass


class ClosureViolation(ValueError):
    def __init__(self, u, v, v_out, u_out):
        super().__init__(f"e_{_digits(u)} f_{_digits(v)} = f_{_digits(v_out)} "
                         f"e_{_digits(u_out)} leaves the chosen word sets")
        self.pair = (u, v)
        self.image = (v_out, u_out)


class _Degenerate:
    def __repr__(self):
        return "DEGENERATE"


DEGENERATE = _Degenerate()


def _digits(w) -> str:
    w = tuple(w)
    if all(x < 10 for x in w):
        return "".join(map(str, w))
    return ".".join(map(str, w))


def _undigits(s: str) -> tuple:
    if "." in s:
        return tuple(int(x) for x in s.split("."))
    return tuple(int(c) for c in s)


def encode(word, base) -> int:
    """1-based index word -> packed int, first letter most significant."""
    x = 0
    for d in word:
        x = x * base + (d - 1)
    return x


def decode(x, base, length) -> tuple:
    out = [0] * length
    for t in range(length - 1, -1, -1):
        x, r = divmod(int(x), base)
        out[t] = r + 1
    return tuple(out)


@dataclass(frozen=True)
class PeriodCandidate:
    a: int
    b: int
    primitive: bool = False

    def __iter__(self):
        return iter((self.a, self.b))


def _candidate(theta, candidate) -> PeriodCandidate:
    if not isinstance(candidate, PeriodCandidate):
        a, b = candidate
        p = primitive_pair(theta.m, theta.n)
        prim = p not in (None, DEGENERATE) and (a, b) == p
        candidate = PeriodCandidate(int(a), int(b), prim)
    a, b = candidate.a, candidate.b
    if a < 1 or b < 1:
        raise CandidateError("a and b must be positive")
    if theta.m ** a != theta.n ** b:
        raise CandidateError(f"m^a = {theta.m}^{a} differs from n^b = {theta.n}^{b}")
    return candidate


@dataclass(frozen=True, eq=False)
class GammaTable:
    """``forward[packed u] = packed gamma(u)`` and ``backward`` its inverse."""

    m: int
    n: int
    a: int
    b: int
    forward: np.ndarray = field(repr=False)
    backward: np.ndarray = field(repr=False)

    def __call__(self, u) -> tuple:
        return decode(self.forward[encode(u, self.m)], self.n, self.b)

    def inverse(self, v) -> tuple:
        return decode(self.backward[encode(v, self.n)], self.m, self.a)

    def __len__(self):
        return len(self.forward)

    def __eq__(self, other):
        return (isinstance(other, GammaTable)
                and (self.m, self.n, self.a, self.b) == (other.m, other.n, other.a, other.b)
                and np.array_equal(self.forward, other.forward)
                and np.array_equal(self.backward, other.backward))

    def items(self):
        for x, y in enumerate(self.forward):
            yield decode(x, self.m, self.a), decode(y, self.n, self.b)

    def is_bijection(self):
        size = len(self.forward)
        if len(self.backward) != size:
            return False
        idx = np.arange(size)
        return (np.array_equal(self.backward[self.forward], idx)
                and np.array_equal(self.forward[self.backward], idx))

    def to_dict(self):
        return {_digits(u): _digits(v) for u, v in self.items()}

    @classmethod
    def from_dict(cls, m, n, a, b, table):
        fwd = np.full(m ** a, -1, dtype=np.int64)
        for us, vs in table.items():
            fwd[encode(_undigits(us), m)] = encode(_undigits(vs), n)
        back = np.full(n ** b, -1, dtype=np.int64)
        back[fwd] = np.arange(len(fwd))
        return cls(m, n, a, b, fwd, back)

    @classmethod
    def from_function(cls, m, n, a, b, fn):
        fwd = np.array([encode(fn(u), n) for u in itertools.product(range(1, m + 1), repeat=a)],
                       dtype=np.int64)
        back = np.full(n ** b, -1, dtype=np.int64)
        back[fwd] = np.arange(len(fwd))
        return cls(m, n, a, b, fwd, back)


@dataclass(frozen=True)
class Witness:
    """A reproducible reason why a candidate period fails.

    kind is one of ``forward``, ``reverse``, ``inconsistent-v0``,
    ``collision`` (from the single-pass check) or ``case-i``, ``case-ii``,
    ``case-iii`` (from the pairwise oracle).
    """

    kind: str
    u0: Optional[tuple] = None
    v0: Optional[tuple] = None
    j0: Optional[int] = None
    i0: Optional[int] = None
    step: Optional[int] = None
    expected: object = None
    actual: object = None
    other: Optional[tuple] = None

    def to_dict(self):
        return {k: _jsonable(getattr(self, k)) for k in
                ("kind", "u0", "v0", "j0", "i0", "step", "expected", "actual", "other")}

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: _tuplify(v) for k, v in d.items()})


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(y) for y in x)
    return x


class PassResult(NamedTuple):
    word: tuple
    ok: bool
    witness: Optional[Witness]


# verdicts -------------------------------------------------------------------

@dataclass(frozen=True)
class Periodic:
    candidate: PeriodCandidate
    gamma: GammaTable
    tag = "Periodic"

    @property
    def period(self):
        return (self.candidate.a, self.candidate.b)


@dataclass(frozen=True)
class NotPeriodic:
    candidate: Optional[PeriodCandidate] = None
    witness: Optional[Witness] = None
    certificate: Optional[AperiodicityCertificate] = None
    sampled: bool = False
    tag = "NotPeriodic"


@dataclass(frozen=True)
class NoCandidates:
    m: int
    n: int
    tag = "NoCandidates"


@dataclass(frozen=True)
class UndecidedUpToBound:
    k_max: int
    tested: tuple = ()
    evidence: Optional["SampledPass"] = None
    tag = "UndecidedUpToBound"


@dataclass(frozen=True)
class DegeneratePeriod:
    a: int
    b: int
    tag = "DegeneratePeriod"

    @property
    def period(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class SampledPass:
    """No counterexample among ``count`` sampled words; never a proof."""

    candidate: PeriodCandidate
    count: int
    seed: int
    tag = "SampledPass"

    def describe(self):
        return f"no counterexample in {self.count} samples (seed {self.seed})"


# arithmetic -----------------------------------------------------------------

def _factor(x):
    out, p = {}, 2
    while p * p <= x:
        while x % p == 0:
            out[p] = out.get(p, 0) + 1
            x //= p
        p += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def primitive_pair(m: int, n: int):
    """Smallest positive ``(a0, b0)`` with ``m^a0 = n^b0``, or None.

    Returns :data:`DEGENERATE` when exactly one of m, n is 1.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if m == 1 and n == 1:
        raise ValueError("m = n = 1 is not a valid 2-graph")
    if m == 1 or n == 1:
        return DEGENERATE
    fm, fn = _factor(m), _factor(n)
    if set(fm) != set(fn):
        return None
    # a * x_p = b * y_p for every prime p
    p = next(iter(fm))
    g = math.gcd(fm[p], fn[p])
    a0, b0 = fn[p] // g, fm[p] // g
    if any(a0 * fm[q] != b0 * fn[q] for q in fm):
        return None
    return a0, b0


def permutation_order(perm) -> int:
    """Order of a permutation given as a 1-based image tuple."""
    seen, order = set(), 1
    for x in range(1, len(perm) + 1):
        if x in seen:
            continue
        length, y = 0, x
        while y not in seen:
            seen.add(y)
            y = perm[y - 1]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


# single passes --------------------------------------------------------------

def _sweep_e(theta, u, j):
    u = list(u)
    for t in range(len(u) - 1, -1, -1):
        u[t], j = theta(u[t], j)
    return u, j


def _sweep_f(theta, i, v):
    v = list(v)
    for t in range(len(v)):
        i, v[t] = theta(i, v[t])
    return i, v


def forward_pass(theta: ThetaSpec, a: int, b: int, u0, j0: int) -> PassResult:
    """Run ``e_{u_t} f_{j_t} = f_{j_{t+1}} e_{u_{t+1}}`` for t = 0..b.

    The returned word is ``v0 = j_1..j_b``; ok iff the last step lands on
    ``(j0, u0)`` again.
    """
    u0 = tuple(u0)
    if len(u0) != a:
        raise ValueError("u0 must have length a")
    u, j, v = list(u0), j0, []
    for _ in range(b):
        u, j = _sweep_e(theta, u, j)
        v.append(j)
    u, j = _sweep_e(theta, u, j)
    if j == j0 and tuple(u) == u0:
        return PassResult(tuple(v), True, None)
    w = Witness("forward", u0=u0, j0=j0, step=b, expected=(j0, u0), actual=(j, tuple(u)))
    return PassResult(tuple(v), False, w)


def reverse_pass(theta: ThetaSpec, a: int, b: int, v0, i0: int) -> PassResult:
    """Run ``e_{i_t} f_{v_t} = f_{v_{t+1}} e_{i_{t+1}}`` for t = 0..a.

    The returned word is ``i_a i_{a-1} .. i_1``; ok iff the last step lands
    on ``(i0, v0)`` again.
    """
    v0 = tuple(v0)
    if len(v0) != b:
        raise ValueError("v0 must have length b")
    i, v, seq = i0, list(v0), []
    for _ in range(a):
        i, v = _sweep_f(theta, i, v)
        seq.append(i)
    i, v = _sweep_f(theta, i, v)
    u = tuple(reversed(seq))
    if i == i0 and tuple(v) == v0:
        return PassResult(u, True, None)
    w = Witness("reverse", v0=v0, i0=i0, step=a, expected=(i0, v0), actual=(i, tuple(v)))
    return PassResult(u, False, w)


def _inconsistent(theta, a, b, u0, j0):
    ref = forward_pass(theta, a, b, u0, 1).word
    got = forward_pass(theta, a, b, u0, j0).word
    step = next(t for t in range(b) if ref[t] != got[t])
    return Witness("inconsistent-v0", u0=tuple(u0), j0=j0, step=step, expected=ref, actual=got)


def _reverse_witness(theta, a, b, v0, i0, expected_u0):
    res = reverse_pass(theta, a, b, v0, i0)
    if not res.ok:
        return res.witness
    return Witness("reverse", v0=tuple(v0), i0=i0, u0=tuple(expected_u0),
                   expected=tuple(expected_u0), actual=res.word)


def replay_witness(theta: ThetaSpec, candidate, witness: Witness) -> Witness:
    """Recompute a single-pass witness from its recorded starting data."""
    a, b = candidate
    if witness.kind == "forward":
        return forward_pass(theta, a, b, witness.u0, witness.j0).witness
    if witness.kind == "inconsistent-v0":
        return _inconsistent(theta, a, b, witness.u0, witness.j0)
    if witness.kind == "reverse":
        if witness.step is not None:
            return reverse_pass(theta, a, b, witness.v0, witness.i0).witness
        return _reverse_witness(theta, a, b, witness.v0, witness.i0, witness.expected)
    if witness.kind == "collision":
        v1 = forward_pass(theta, a, b, witness.u0, 1).word
        v2 = forward_pass(theta, a, b, witness.other, 1).word
        if v1 != v2:
            return None
        return Witness("collision", u0=witness.u0, other=witness.other, v0=v1)
    raise ValueError(f"cannot replay a {witness.kind!r} witness")


# the single-pass check ------------------------------------------------------

def _run_chunks(fn, ranges, workers):
    """Apply fn to ranges in order; stop at the first window with a failure.

    Returns the failure with the smallest start, so the answer does not depend
    on the number of workers.
    """
    window = max(1, workers)
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for s in range(0, len(ranges), window):
            batch = ranges[s:s + window]
            results = list(pool.map(fn, batch)) if pool else [fn(r) for r in batch]
            for res in results:
                if res[0] != -1:
                    return res
        return None
    finally:
        if pool:
            pool.shutdown()


def _ranges(size, chunk):
    return [(s, min(size, s + chunk)) for s in range(0, size, chunk)]


def check_period(theta: ThetaSpec, candidate, mode: str = "exhaustive", *,
                 samples: int = 100_000, seed: int = 0, workers: int = 1,
                 limit: int = DEFAULT_LIMIT, chunk: int = CHUNK):
    """Decide whether the semigroup is (a,-b)-periodic.

    ``exhaustive`` returns :class:`Periodic` or :class:`NotPeriodic`;
    ``sampled`` returns :class:`SampledPass` or :class:`NotPeriodic`.
    """
    cand = _candidate(theta, candidate)
    if mode == "exhaustive":
        return _check_exhaustive(theta, cand, workers, limit, chunk)
    if mode == "sampled":
        return _check_sampled(theta, cand, samples, seed, workers)
    raise ValueError(f"unknown mode {mode!r}")


def _check_exhaustive(theta, cand, workers, limit, chunk):
    m, n, a, b = theta.m, theta.n, cand.a, cand.b
    size = m ** a
    if size > limit:
        raise EnumerationLimitError(f"{m}^{a} = {size} words exceeds the limit {limit}")
    ti, tj = theta.tables
    gamma = np.empty(size, dtype=np.int64)

    def fwd(r):
        return K.forward_range(ti, tj, m, n, a, b, r[0], r[1], gamma)

    fail = _run_chunks(fwd, _ranges(size, chunk), workers)
    if fail is not None:
        idx, kind, j0 = fail
        u0 = decode(idx, m, a)
        if kind == K.FORWARD:
            w = forward_pass(theta, a, b, u0, j0 + 1).witness
        else:
            w = _inconsistent(theta, a, b, u0, j0 + 1)
        return NotPeriodic(cand, w)

    inverse = np.empty(size, dtype=np.int64)
    u_late, u_early = K.first_collision(gamma, size, inverse)
    if u_late != -1:
        u0, other = decode(u_late, m, a), decode(u_early, m, a)
        return NotPeriodic(cand, Witness("collision", u0=u0, other=other,
                                         v0=decode(gamma[u_late], n, b)))

    def rev(r):
        return K.reverse_range(ti, tj, m, n, a, b, r[0], r[1], inverse)

    fail = _run_chunks(rev, _ranges(size, chunk), workers)
    if fail is not None:
        idx, _, i0 = fail
        v0 = decode(idx, n, b)
        return NotPeriodic(cand, _reverse_witness(theta, a, b, v0, i0 + 1,
                                                  decode(inverse[idx], m, a)))
    return Periodic(cand, GammaTable(m, n, a, b, gamma, inverse))


def _sample_rows(m, a, count, seed):
    """Sampled words in fixed-size chunks, each from its own spawned stream."""
    nchunks = -(-count // SAMPLE_CHUNK)
    streams = np.random.SeedSequence(seed).spawn(nchunks)
    for k, ss in enumerate(streams):
        rows = min(SAMPLE_CHUNK, count - k * SAMPLE_CHUNK)
        yield np.random.default_rng(ss).integers(0, m, size=(rows, a), dtype=np.int64)


def _check_sampled(theta, cand, samples, seed, workers):
    m, n, a, b = theta.m, theta.n, cand.a, cand.b
    ti, tj = theta.tables
    chunks = list(_sample_rows(m, a, samples, seed))
    vouts = [np.empty((len(c), b), dtype=np.int64) for c in chunks]

    def run(k):
        r, kind, start = K.sampled_rows(ti, tj, m, n, a, b, chunks[k], vouts[k])
        return (r, kind, start, k)

    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        results = list(pool.map(run, range(len(chunks)))) if pool else map(run, range(len(chunks)))
        for r, kind, start, k in results:
            if r == -1:
                continue
            u0 = tuple(int(x) + 1 for x in chunks[k][r])
            if kind == K.FORWARD:
                w = forward_pass(theta, a, b, u0, start + 1).witness
            elif kind == K.INCONSISTENT:
                w = _inconsistent(theta, a, b, u0, start + 1)
            else:
                v0 = tuple(int(x) + 1 for x in vouts[k][r])
                w = _reverse_witness(theta, a, b, v0, start + 1, u0)
            return NotPeriodic(cand, w, sampled=True)
    finally:
        if pool:
            pool.shutdown()

    # distinct sampled words must not share a gamma value
    us = np.concatenate(chunks)
    vs = np.concatenate(vouts)
    seen = {}
    for u, v in zip(map(bytes, us.astype(np.uint8)), map(bytes, vs.astype(np.uint8))):
        prev = seen.setdefault(v, u)
        if prev != u:
            u0 = tuple(x + 1 for x in u)
            other = tuple(x + 1 for x in prev)
            return NotPeriodic(cand, Witness("collision", u0=u0, other=other,
                                             v0=tuple(x + 1 for x in v)), sampled=True)
    return SampledPass(cand, samples, seed)


def minimal_period(theta: ThetaSpec, k_max: int, *, samples: int = 100_000, seed: int = 0,
                   workers: int = 1, limit: int = DEFAULT_LIMIT):
    """Search ``k * (a0, b0)`` for k = 1..k_max.

    A sampled pre-filter runs before every exhaustive pass.  If the
    aperiodicity criterion applies the search is skipped altogether.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    m, n = theta.m, theta.n
    if m == 1:
        return DegeneratePeriod(0, permutation_order([theta(1, j)[1] for j in range(1, n + 1)]))
    if n == 1:
        return DegeneratePeriod(permutation_order([theta(i, 1)[0] for i in range(1, m + 1)]), 0)
    base = primitive_pair(m, n)
    if base is None:
        return NoCandidates(m, n)
    cert = find_certificate(theta)
    if cert is not None:
        return NotPeriodic(certificate=cert)
    a0, b0 = base
    tested = []
    for k in range(1, k_max + 1):
        cand = PeriodCandidate(k * a0, k * b0, k == 1)
        tested.append((cand.a, cand.b))
        size = m ** cand.a
        if size > samples:
            pre = check_period(theta, cand, "sampled", samples=samples, seed=seed,
                               workers=workers)
            if isinstance(pre, NotPeriodic):
                continue
            if size > limit:
                return UndecidedUpToBound(k_max, tuple(tested), pre)
        verdict = check_period(theta, cand, "exhaustive", workers=workers, limit=limit)
        if isinstance(verdict, Periodic):
            return verdict
    return UndecidedUpToBound(k_max, tuple(tested))


# consequences of periodicity ------------------------------------------------

def gamma_shift_check(theta: ThetaSpec, gamma: GammaTable, mode: str = "exhaustive", *,
                      samples: int = 100_000, seed: int = 0) -> bool:
    """``e_{i0} f_gamma(i1..ia) = f_gamma(i0..i_{a-1}) e_{ia}`` and its dual."""
    m, n, a, b = gamma.m, gamma.n, gamma.a, gamma.b
    if (m, n) != (theta.m, theta.n) or not gamma.is_bijection():
        return False
    ti, tj = theta.tables
    if mode == "exhaustive":
        if K.shift_identity_range(ti, tj, m, n, a, b, gamma.forward, 0, m ** (a + 1)) != -1:
            return False
        return K.dual_shift_identity_range(ti, tj, m, n, a, b, gamma.backward,
                                           0, n ** (b + 1)) == -1
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        rows = rng.integers(0, m, size=(samples, a + 1), dtype=np.int64)
        if K.shift_identity_rows(ti, tj, m, n, a, b, gamma.forward, rows) != -1:
            return False
        # the dual identity on sampled (b+1)-tuples, through the swapped semigroup
        swapped = theta.swapped()
        si, sj = swapped.tables
        rows = rng.integers(0, n, size=(samples, b + 1), dtype=np.int64)
        return K.shift_identity_rows(si, sj, n, m, b, a, gamma.backward, rows) == -1
    raise ValueError(f"unknown mode {mode!r}")


class HalfSymmetry(NamedTuple):
    period: tuple
    alpha: dict
    beta: dict
    order: int


def _fe(theta, u, v):
    vv, uu = split_fe(theta, e_word(u) + f_word(v))
    return tuple(vv), tuple(uu)


def half_symmetry(theta: ThetaSpec, candidate, mode: str = "exhaustive", *,
                  samples: int = 10_000, seed: int = 0,
                  limit: int = ORACLE_LIMIT) -> Optional[HalfSymmetry]:
    """If ``e_u f_v = f_alpha(u) e_beta(v)`` for all ``|u| = a, |v| = b``,
    the semigroup is ``(ak,-bk)``-periodic with k the order of beta o alpha."""
    cand = _candidate(theta, candidate)
    m, n, a, b = theta.m, theta.n, cand.a, cand.b
    us = list(itertools.product(range(1, m + 1), repeat=a))
    vs = list(itertools.product(range(1, n + 1), repeat=b))
    alpha = {u: _fe(theta, u, vs[0])[0] for u in us}
    beta = {v: _fe(theta, us[0], v)[1] for v in vs}
    if mode == "exhaustive":
        if len(us) * len(vs) > limit:
            raise EnumerationLimitError("too many pairs for an exhaustive half-symmetry test")
        pairs = itertools.product(us, vs)
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        pairs = ((us[rng.integers(len(us))], vs[rng.integers(len(vs))]) for _ in range(samples))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for u, v in pairs:
        if _fe(theta, u, v) != (alpha[u], beta[v]):
            return None
    if len(set(alpha.values())) != len(us) or len(set(beta.values())) != len(vs):
        return None
    index = {u: k for k, u in enumerate(us, 1)}
    perm = [index[beta[alpha[u]]] for u in us]
    k = permutation_order(perm)
    return HalfSymmetry((a * k, b * k), alpha, beta, k)


def brute_force_oracle(theta: ThetaSpec, candidate, limit: int = ORACLE_LIMIT):
    """Check ``e_u f_v = f_gamma(u) e_gamma^-1(v)`` over every pair directly."""
    cand = _candidate(theta, candidate)
    m, n, a, b = theta.m, theta.n, cand.a, cand.b
    if m ** a * n ** b > limit:
        raise EnumerationLimitError(f"{m ** a * n ** b} pairs exceeds the oracle limit {limit}")
    us = list(itertools.product(range(1, m + 1), repeat=a))
    vs = list(itertools.product(range(1, n + 1), repeat=b))
    alpha, beta = {}, {}
    for u in us:
        for v in vs:
            v2, u2 = _fe(theta, u, v)
            if alpha.setdefault(u, v2) != v2:
                return NotPeriodic(cand, Witness("case-ii", u0=u, v0=v,
                                                 expected=alpha[u], actual=v2))
            if beta.setdefault(v, u2) != u2:
                return NotPeriodic(cand, Witness("case-i", u0=u, v0=v,
                                                 expected=beta[v], actual=u2))
    for u in us:
        if beta[alpha[u]] != u:
            return NotPeriodic(cand, Witness("case-iii", u0=u, v0=alpha[u],
                                             expected=u, actual=beta[alpha[u]]))
    return Periodic(cand, GammaTable.from_function(m, n, a, b, alpha.__getitem__))


def sub_two_graph(theta: ThetaSpec, p: int, q: int, U, V) -> ThetaSpec:
    """The 2-graph generated by ``{e_u : u in U}`` and ``{f_v : v in V}``.

    Raises :class:`ClosureViolation` when some ``e_u f_v`` does not refactor
    inside the chosen words.
    """
    U = [tuple(u) for u in U]
    V = [tuple(v) for v in V]
    if not U or not V:
        raise ValueError("U and V must be non-empty")
    if any(len(u) != p for u in U) or any(len(v) != q for v in V):
        raise ValueError("word lengths must match p and q")
    iu = {u: k for k, u in enumerate(U, 1)}
    iv = {v: k for k, v in enumerate(V, 1)}
    mapping = {}
    for u in U:
        for v in V:
            v2, u2 = _fe(theta, u, v)
            if u2 not in iu or v2 not in iv:
                raise ClosureViolation(u, v, v2, u2)
            mapping[(iu[u], iv[v])] = (iu[u2], iv[v2])
    return ThetaSpec.from_mapping(len(U), len(V), mapping)
