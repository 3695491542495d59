"""Compiled inner loops for the periodicity passes.

Everything here is 0-based.  ``ti[i, j], tj[i, j]`` is theta(i, j); words
in ``m^a`` are packed base-m with the first letter most significant, so
increasing packed value is lexicographic order.
"""
import numpy as np
from numba import njit

# failure kinds reported by the kernels
OK = 0
FORWARD = 1
INCONSISTENT = 2
REVERSE = 3
COLLISION = 4


@njit(cache=True, nogil=True)
def sweep_e(ti, tj, u, j):
    """e_u f_j = f_j' e_u'; rewrites u in place, returns j'."""
    for t in range(u.shape[0] - 1, -1, -1):
        i = u[t]
        u[t] = ti[i, j]
        j = tj[i, j]
    return j


@njit(cache=True, nogil=True)
def sweep_f(ti, tj, i, v):
    """e_i f_v = f_v' e_i'; rewrites v in place, returns i'."""
    for t in range(v.shape[0]):
        j = v[t]
        v[t] = tj[i, j]
        i = ti[i, j]
    return i


@njit(cache=True, nogil=True)
def _decode(x, base, out):
    for t in range(out.shape[0] - 1, -1, -1):
        out[t] = x % base
        x //= base


@njit(cache=True, nogil=True)
def _forward_word(ti, tj, n, b, u0, u, vdig):
    """All n forward passes for one u0.

    Returns (kind, j0, packed v0); v0 digits of the j0 = 0 pass land in vdig.
    """
    first = -1
    for j0 in range(n):
        u[:] = u0
        j = j0
        v = 0
        for step in range(b):
            j = sweep_e(ti, tj, u, j)
            v = v * n + j
            if j0 == 0:
                vdig[step] = j
        j = sweep_e(ti, tj, u, j)
        if j != j0:
            return FORWARD, j0, v
        for t in range(u.shape[0]):
            if u[t] != u0[t]:
                return FORWARD, j0, v
        if j0 == 0:
            first = v
        elif v != first:
            return INCONSISTENT, j0, v
    return OK, 0, first


@njit(cache=True, nogil=True)
def _reverse_word(ti, tj, m, a, v0, v, ui, expect):
    """All m reverse passes for one v0; expect is the packed u0 to recover."""
    for i0 in range(m):
        v[:] = v0
        i = i0
        for step in range(a):
            i = sweep_f(ti, tj, i, v)
            ui[step] = i
        i = sweep_f(ti, tj, i, v)
        if i != i0:
            return REVERSE, i0
        for t in range(v.shape[0]):
            if v[t] != v0[t]:
                return REVERSE, i0
        # u0 is assembled in reverse: i_a ... i_1
        got = 0
        for step in range(a - 1, -1, -1):
            got = got * m + ui[step]
        if got != expect:
            return REVERSE, i0
    return OK, 0


@njit(cache=True, nogil=True)
def forward_range(ti, tj, m, n, a, b, start, stop, gamma):
    """Forward passes for packed u0 in [start, stop); fills gamma[u0].

    Returns (first failing u0 or -1, kind, j0).
    """
    u0 = np.empty(a, np.int64)
    u = np.empty(a, np.int64)
    vdig = np.empty(b, np.int64)
    _decode(start, m, u0)
    for idx in range(start, stop):
        kind, j0, v = _forward_word(ti, tj, n, b, u0, u, vdig)
        if kind != OK:
            return idx, kind, j0
        gamma[idx] = v
        # odometer increment
        t = a - 1
        while t >= 0:
            u0[t] += 1
            if u0[t] < m:
                break
            u0[t] = 0
            t -= 1
    return -1, OK, 0


@njit(cache=True, nogil=True)
def first_collision(gamma, size, inverse):
    """Fills inverse; returns (u0, earlier u0) for the first repeated value."""
    for v in range(size):
        inverse[v] = -1
    for u in range(gamma.shape[0]):
        v = gamma[u]
        if inverse[v] != -1:
            return u, inverse[v]
        inverse[v] = u
    return -1, -1


@njit(cache=True, nogil=True)
def reverse_range(ti, tj, m, n, a, b, start, stop, inverse):
    """Reverse passes for packed v0 in [start, stop).

    Returns (first failing v0 or -1, kind, i0).
    """
    v0 = np.empty(b, np.int64)
    v = np.empty(b, np.int64)
    ui = np.empty(a, np.int64)
    _decode(start, n, v0)
    for idx in range(start, stop):
        kind, i0 = _reverse_word(ti, tj, m, a, v0, v, ui, inverse[idx])
        if kind != OK:
            return idx, kind, i0
        t = b - 1
        while t >= 0:
            v0[t] += 1
            if v0[t] < n:
                break
            v0[t] = 0
            t -= 1
    return -1, OK, 0


@njit(cache=True, nogil=True)
def sampled_rows(ti, tj, m, n, a, b, rows, vout):
    """Forward and reverse passes for each sampled u0 (rows of digits).

    v0 digits go to vout.  Returns (first failing row or -1, kind, start index).
    """
    u = np.empty(a, np.int64)
    v = np.empty(b, np.int64)
    ui = np.empty(a, np.int64)
    u0 = np.empty(a, np.int64)
    vdig = np.empty(b, np.int64)
    for r in range(rows.shape[0]):
        expect = 0
        for t in range(a):
            u0[t] = rows[r, t]
            expect = expect * m + u0[t]
        kind, j0, packed = _forward_word(ti, tj, n, b, u0, u, vdig)
        if kind != OK:
            return r, kind, j0
        for t in range(b):
            vout[r, t] = vdig[t]
        kind, i0 = _reverse_word(ti, tj, m, a, vdig, v, ui, expect)
        if kind != OK:
            return r, kind, i0
    return -1, OK, 0


@njit(cache=True, nogil=True)
def shift_identity_range(ti, tj, m, n, a, b, gamma, start, stop):
    """e_{i0} f_{gamma(i1..ia)} == f_{gamma(i0..i_{a-1})} e_{ia} over packed
    (a+1)-tuples in [start, stop).  Returns the first failing tuple or -1."""
    word = np.empty(a + 1, np.int64)
    v = np.empty(b, np.int64)
    base_hi = 1
    for _ in range(a):
        base_hi *= m
    for idx in range(start, stop):
        _decode(idx, m, word)
        tail = idx % base_hi
        head = idx // m
        _decode(gamma[tail], n, v)
        i = sweep_f(ti, tj, word[0], v)
        if i != word[a]:
            return idx
        got = 0
        for t in range(b):
            got = got * n + v[t]
        if got != gamma[head]:
            return idx
    return -1


@njit(cache=True, nogil=True)
def dual_shift_identity_range(ti, tj, m, n, a, b, inverse, start, stop):
    """e_{g^-1(j0..j_{b-1})} f_{jb} == f_{j0} e_{g^-1(j1..jb)} over packed
    (b+1)-tuples in [start, stop).  Returns the first failing tuple or -1."""
    word = np.empty(b + 1, np.int64)
    u = np.empty(a, np.int64)
    base_hi = 1
    for _ in range(b):
        base_hi *= n
    for idx in range(start, stop):
        _decode(idx, n, word)
        head = idx // n
        tail = idx % base_hi
        _decode(inverse[head], m, u)
        j = sweep_e(ti, tj, u, word[b])
        if j != word[0]:
            return idx
        got = 0
        for t in range(a):
            got = got * m + u[t]
        if got != inverse[tail]:
            return idx
    return -1


@njit(cache=True, nogil=True)
def shift_identity_rows(ti, tj, m, n, a, b, gamma, rows):
    """Sampled version of shift_identity_range over explicit digit rows."""
    v = np.empty(b, np.int64)
    for r in range(rows.shape[0]):
        tail = 0
        head = 0
        for t in range(1, a + 1):
            tail = tail * m + rows[r, t]
        for t in range(a):
            head = head * m + rows[r, t]
        _decode(gamma[tail], n, v)
        i = sweep_f(ti, tj, rows[r, 0], v)
        if i != rows[r, a]:
            return r
        got = 0
        for t in range(b):
            got = got * n + v[t]
        if got != gamma[head]:
            return r
    return -1


@njit(cache=True, nogil=True)
def fe_normal_forms(ti, tj, words, colors, fout, eout):
    """FE normal forms of many words of one colour pattern (1 = e, 0 = f).

    Returns the number of elementary swaps performed.
    """
    k = 0
    for c in colors:
        k += c
    es = np.empty(k, np.int64)
    swaps = 0
    for r in range(words.shape[0]):
        ne = 0
        nf = 0
        for x in range(words.shape[1]):
            if colors[x] == 1:
                es[ne] = words[r, x]
                ne += 1
            else:
                j = words[r, x]
                for t in range(ne - 1, -1, -1):
                    i = es[t]
                    es[t] = ti[i, j]
                    j = tj[i, j]
                    swaps += 1
                fout[r, nf] = j
                nf += 1
        for t in range(ne):
            eout[r, t] = es[t]
    return swaps
