"""Slow reference computations used only by the tests."""
from itertools import permutations

from twograph.maps import EndoMap, constancy_depth, side_certificate


def layers_constant_by(gens, length):
    """Whether every composition of exactly ``length`` generators is
    constant, by growing the set of compositions one generator at a time."""
    layer = set(gens)
    for _ in range(length - 1):
        layer = {t.after(g) for t in layer for g in gens}
    return all(t.is_constant() for t in layer)


def dichotomy_sweep(sizes, length=9):
    """For every theta of the given (m, n) sizes and both sides, compare the
    certificate decision with explicit composition layers.

    Returns (number of thetas, number of distinct generator families, mismatches).
    """
    cache = {}

    def decide(tables, d):
        if tables not in cache:
            gens = [EndoMap(t) for t in tables]
            has_cert = side_certificate(gens) is not None
            const = layers_constant_by(gens, length)
            depth = constancy_depth(gens, length)
            cache[tables] = (has_cert, const, depth)
        return cache[tables]

    count, bad = 0, []
    for m, n in sizes:
        pairs = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
        for perm in permutations(range(m * n)):
            count += 1
            img = [pairs[k] for k in perm]  # img[(i-1)*n + (j-1)] = theta(i, j)
            alphas = tuple(tuple(img[(i - 1) * n + j - 1][1] for j in range(1, n + 1))
                           for i in range(1, m + 1))
            betas = tuple(tuple(img[(i - 1) * n + j - 1][0] for i in range(1, m + 1))
                          for j in range(1, n + 1))
            for side, tables in (("alpha", alphas), ("beta", betas)):
                has_cert, const, depth = decide(tables, None)
                # exactly one of: certificate, or eventually constant compositions
                if has_cert == const or (depth is not None) != const:
                    bad.append((m, n, perm, side, has_cert, const, depth))
    return count, len(cache), bad
