"""Independent reference computations used as test oracles.

These deliberately avoid the library's own shortcuts (bitmask tables,
integer scaling, dynamic programming) and follow the definitions literally.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from abmp.core import Instance
from abmp.generators import random_instance


def direct_value(inst: Instance, i: int, S) -> Fraction:
    """Row valuation from its definition: ones kept, zeros merged with the missing ones."""
    S = set(S)
    ones = [j for j in range(inst.m) if inst.A[i][j]]
    a = sum((inst.p[j] for j in S if inst.A[i][j]), Fraction(0))
    b = sum((inst.p[j] for j in S if not inst.A[i][j]), Fraction(0))
    g = sum((inst.p[j] for j in ones if j not in S), Fraction(0))
    if b == 0 or g == 0:
        return a
    return a + b * g / (b + g)


def literal_scheme_value(inst: Instance, rows) -> Fraction:
    """Partition value with the smooth matrix built entry by entry."""
    total = Fraction(0)
    for j in range(inst.m):
        best = Fraction(0)
        for i, row in enumerate(rows):
            (b,) = [b for b in row if j in b]
            num = sum((inst.p[c] * inst.A[i][c] for c in b), Fraction(0))
            den = sum((inst.p[c] for c in b), Fraction(0))
            best = max(best, num / den)
        total += inst.p[j] * best
    return total


def enumerate_allocations(inst: Instance) -> Fraction:
    """Best welfare over every map column -> row or unassigned."""
    best = Fraction(0)
    for owners in itertools.product(range(-1, inst.n), repeat=inst.m):
        w = sum(
            (direct_value(inst, i, [j for j in range(inst.m) if owners[j] == i]) for i in range(inst.n)),
            Fraction(0),
        )
        best = max(best, w)
    return best


def exact_multilinear(inst: Instance, x) -> float:
    """Expected welfare when row i takes column j independently with probability x[i][j]."""
    total = 0.0
    for i in range(inst.n):
        for bits in itertools.product((0, 1), repeat=inst.m):
            prob = 1.0
            for j, b in enumerate(bits):
                prob *= x[i][j] if b else 1 - x[i][j]
            if prob:
                total += prob * float(direct_value(inst, i, [j for j, b in enumerate(bits) if b]))
    return total


def stirling_bell(k: int) -> int:
    """Bell number as a sum of Stirling numbers of the second kind."""
    S = [[0] * (k + 1) for _ in range(k + 1)]
    S[0][0] = 1
    for a in range(1, k + 1):
        for b in range(1, a + 1):
            S[a][b] = b * S[a - 1][b] + S[a - 1][b - 1]
    return sum(S[k])


def small_uniform_corpus(count: int = 500, seed: int = 2024):
    """Seeded uniform instances with n <= 4, m <= 7 and varied densities."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n, m = rng.randint(1, 4), rng.randint(1, 7)
        density = Fraction(rng.randint(1, 4), 5)
        out.append(random_instance(n, m, density, "uniform", seed=rng.randrange(10**9)))
    return out


def small_weighted_corpus(count: int = 500, seed: int = 7, max_n: int = 4, max_m: int = 7):
    """Seeded instances with non-uniform rational column probabilities."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, m = rng.randint(1, max_n), rng.randint(2, max_m)
        density = Fraction(rng.randint(1, 4), 5)
        inst = random_instance(n, m, density, "dirichlet", seed=rng.randrange(10**9))
        if not inst.uniform:
            out.append(inst)
    return out


def as_rows(x: np.ndarray) -> list[list[float]]:
    return [list(map(float, row)) for row in x]
