"""Named instance families and a seeded random generator."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from abmp.core import Instance, PartitionScheme
from abmp.errors import BadParameters

KINDS = ("worked3x6", "tight4x4", "eight-ninths", "half-tight", "random")


def worked_3x6() -> Instance:
    return Instance.from_rows(["011010", "011010", "011000"])


def worked_schemes() -> dict[str, PartitionScheme]:
    """The four schemes walked through on :func:`worked_3x6`, keyed B, B1, B2, B3."""
    one = PartitionScheme.from_one_based
    return {
        "B": one([[[1, 2, 3, 4], [5, 6]], [[1, 2], [3], [4, 6], [5]], [[1, 4, 6], [2, 3, 5]]]),
        "B1": one([[[1], [2, 3, 4], [5, 6]], [[1, 2], [3], [4, 6], [5]], [[1, 4, 5, 6], [2, 3]]]),
        "B2": one([[[1], [2, 3, 4, 5, 6]], [[1, 2], [3], [4, 6], [5]], [[1, 4, 5, 6], [2, 3]]]),
        "B3": one([[[1], [2, 3, 4, 5, 6]], [[1, 2, 3], [4, 6], [5]], [[1, 4, 5, 6], [2], [3]]]),
    }


def tight_4x4() -> Instance:
    return Instance.from_rows(["1000", "0100", "1100", "1100"])


def eight_ninths(beta) -> Instance:
    beta = Fraction(beta)
    if beta <= 2:
        raise BadParameters(f"eight-ninths family needs beta > 2, got {beta}")
    small = 1 / (beta + 3)
    return Instance.from_rows(["1000", "0100", "0100", "1010"], (small, small, small, beta / (beta + 3)))


def eight_ninths_merged_scheme() -> PartitionScheme:
    """The scheme that beats every full cover on :func:`eight_ninths`."""
    return PartitionScheme.from_one_based(
        [[[1], [2, 3, 4]], [[2], [1, 3, 4]], [[1, 4], [2, 3]], [[2], [1, 3, 4]]]
    )


def half_tight(k: int, alpha) -> Instance:
    alpha = Fraction(alpha)
    if k < 1 or alpha <= k:
        raise BadParameters(f"half-tight family needs k >= 1 and alpha > k, got k={k}, alpha={alpha}")
    rows = [[1 if c == i else 0 for c in range(k + 1)] for i in range(k)]
    rows.append([1] * k + [0])
    p = (Fraction(1) / (k + alpha),) * k + (alpha / (k + alpha),)
    return Instance.from_rows(rows, p)


def half_tight_diagonal_scheme(k: int) -> PartitionScheme:
    """Diagonal cover plus the whole last row as one bundle."""
    m = k + 1
    rows = []
    for i in range(k):
        rows.append((frozenset([i]), frozenset(range(m)) - {i}))
    rows.append((frozenset(range(m)),))
    return PartitionScheme(tuple(rows))


def random_instance(n: int, m: int, density=Fraction(1, 2), distribution: str = "uniform", seed: int = 0) -> Instance:
    """Seeded random instance; portable across platforms (``random.Random``).

    Entries are 1 with probability ``density`` (drawn exactly via integer
    ranges).  All-zero matrices are redrawn when ``density > 0``.  The
    ``dirichlet`` distribution uses integer weights 1..10, normalised exactly.
    """
    density = Fraction(density)
    if n < 1 or m < 1 or not 0 <= density <= 1:
        raise BadParameters("random instances need n, m >= 1 and density in [0, 1]")
    if distribution not in ("uniform", "dirichlet"):
        raise BadParameters(f"unknown distribution {distribution!r}")
    rng = random.Random(seed)
    while True:
        A = [[int(rng.randrange(density.denominator) < density.numerator) for _ in range(m)] for _ in range(n)]
        if density == 0 or any(any(row) for row in A):
            break
    if distribution == "uniform":
        p = (Fraction(1, m),) * m
    else:
        w = [rng.randint(1, 10) for _ in range(m)]
        p = tuple(Fraction(x, sum(w)) for x in w)
    return Instance.from_rows(A, p)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParameters(f"unknown generator {self.kind!r}; choose from {', '.join(KINDS)}")

    def label(self) -> str:
        if not self.params:
            return self.kind
        return self.kind + "(" + ",".join(f"{k}={v}" for k, v in self.params.items()) + ")"


def generate(spec: GeneratorSpec) -> Instance:
    kw = spec.params
    try:
        if spec.kind == "worked3x6":
            return worked_3x6()
        if spec.kind == "tight4x4":
            return tight_4x4()
        if spec.kind == "eight-ninths":
            return eight_ninths(kw["beta"])
        if spec.kind == "half-tight":
            return half_tight(int(kw["k"]), kw["alpha"])
        return random_instance(
            int(kw["n"]),
            int(kw["m"]),
            Fraction(kw.get("density", Fraction(1, 2))),
            kw.get("distribution", "uniform"),
            int(kw.get("seed", 0)),
        )
    except KeyError as exc:
        raise BadParameters(f"{spec.kind} needs parameter {exc.args[0]!r}") from None
