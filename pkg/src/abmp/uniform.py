"""Cover-then-greedy algorithm for uniform instances, plus the quantities its
analysis reasons about (marginal ``delta``, ``rho``, bundle decomposition).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from abmp.core import BundleClass, Instance, PartitionScheme, classify_bundle, taxonomy
from abmp.errors import DomainError, InvalidBundle, NoZeroColumns, NotUniform


def delta(x: int, y: int) -> Fraction:
    """Gain (in column units) from adding a zero-column to a bundle of x zero- and y one-columns."""
    if y < 1 or x < 0:
        raise InvalidBundle(f"delta needs y >= 1 and x >= 0, got x={x}, y={y}")
    return Fraction(y * y, (x + y) * (x + y + 1))


@dataclass(frozen=True)
class CoverPolicy:
    """How to pick the covering row of each one-column.

    ``first-fit`` takes the lowest row with a 1.  ``adversarial`` takes the row
    that still has the most uncovered 1-entries, eating into the largest
    potential mixed bundles (a heuristic for bad covers, not a proven worst
    case).  ``seeded`` picks uniformly at random with ``random.Random(seed)``.
    """

    kind: str = "first-fit"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("first-fit", "adversarial", "seeded"):
            raise ValueError(f"unknown cover policy {self.kind!r}")
        if self.kind == "seeded" and self.seed is None:
            raise ValueError("seeded cover policy needs a seed")

    @classmethod
    def seeded(cls, seed: int) -> "CoverPolicy":
        return cls("seeded", seed)

    def __str__(self):
        return f"seeded {self.seed}" if self.kind == "seeded" else self.kind


FIRST_FIT = CoverPolicy("first-fit")
ADVERSARIAL = CoverPolicy("adversarial")


@dataclass(frozen=True)
class Cover:
    """Column-covering choices: ``covered[i]`` are the columns covered in row i."""

    covered: tuple[frozenset, ...]
    leftovers: tuple[frozenset, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, cols in enumerate(self.covered) for j in cols)

    def row_of(self) -> dict[int, int]:
        return {j: i for i, cols in enumerate(self.covered) for j in cols}


def cover_phase(inst: Instance, policy: CoverPolicy = FIRST_FIT) -> Cover:
    """Cover every one-column exactly once, scanning columns in ascending order."""
    tax = taxonomy(inst)
    remaining = [set(ones) for ones in tax.row_ones]
    covered: list[set[int]] = [set() for _ in range(inst.n)]
    rng = random.Random(policy.seed) if policy.kind == "seeded" else None
    for j in sorted(tax.onecols):
        rows = [i for i in range(inst.n) if inst.A[i][j]]
        if policy.kind == "first-fit":
            i = rows[0]
        elif policy.kind == "adversarial":
            i = max(rows, key=lambda r: (len(remaining[r]), -r))
        else:
            i = rng.choice(rows)
        covered[i].add(j)
        remaining[i].discard(j)
    return Cover(tuple(frozenset(c) for c in covered), tuple(frozenset(r) for r in remaining))


@dataclass
class GreedyResult:
    scheme: PartitionScheme
    value: Fraction
    cover: Cover
    # one (zero-column, row or None, x, y, delta) tuple per zero-column
    trace: list = field(default_factory=list)


def _assemble(inst: Instance, cover: Cover, placed: list[set[int]]) -> PartitionScheme:
    rows = []
    for i in range(inst.n):
        bundles = [frozenset([j]) for j in sorted(cover.covered[i])]
        pool = cover.leftovers[i] | placed[i]
        if pool:
            bundles.append(frozenset(pool))
        rest = inst.row_zeros(i) - placed[i]
        if rest:
            bundles.append(frozenset(rest))
        rows.append(tuple(bundles))
    return PartitionScheme(tuple(rows))


def greedy_completion(inst: Instance, cover: Cover, order: Optional[Sequence[int]] = None) -> GreedyResult:
    """Place zero-columns into the row bundle with the largest ``delta``.

    Zero-columns are visited in ascending order unless ``order`` is given.
    Each row has one candidate bundle seeded with its uncovered 1-entries; rows
    without any are not eligible.  Ties go to the lowest row index.
    """
    if not inst.uniform:
        raise NotUniform("greedy completion by delta assumes a uniform distribution")
    tax = taxonomy(inst)
    x = [0] * inst.n
    y = [len(l) for l in cover.leftovers]
    placed: list[set[int]] = [set() for _ in range(inst.n)]
    trace = []
    gained = Fraction(0)
    if order is None:
        order = sorted(tax.zerocols)
    elif sorted(order) != sorted(tax.zerocols):
        raise ValueError("order must list every zero-column exactly once")
    for j in order:
        eligible = [i for i in range(inst.n) if y[i] >= 1]
        if not eligible:
            trace.append((j, None, 0, 0, Fraction(0)))
            continue
        i = max(eligible, key=lambda r: (delta(x[r], y[r]), -r))
        d = delta(x[i], y[i])
        trace.append((j, i, x[i], y[i], d))
        gained += d
        x[i] += 1
        placed[i].add(j)
    value = tax.r + gained / inst.m if inst.m else Fraction(0)
    return GreedyResult(_assemble(inst, cover, placed), value, cover, trace)


def uniform_greedy(inst: Instance, policy: CoverPolicy = FIRST_FIT) -> GreedyResult:
    if not inst.uniform:
        raise NotUniform("the uniform greedy algorithm needs equal column probabilities")
    return greedy_completion(inst, cover_phase(inst, policy))


def mixed_bundles(inst: Instance, scheme: PartitionScheme) -> list[tuple[int, frozenset]]:
    return [
        (i, b)
        for i, row in enumerate(scheme.rows)
        for b in row
        if classify_bundle(inst, i, b) is BundleClass.MIXED
    ]


def rho(inst: Instance, scheme: PartitionScheme) -> Fraction:
    """1-entries appearing in mixed bundles, per zero-column."""
    zerocols = taxonomy(inst).zerocols
    if not zerocols:
        raise NoZeroColumns("rho is undefined without zero-columns")
    appearances = sum(sum(inst.A[i][j] for j in b) for i, b in mixed_bundles(inst, scheme))
    return Fraction(appearances, len(zerocols))


def decompose(x: int, y: int) -> list[int]:
    """Split a bundle of x one-columns and y zero-columns into y one-zero-column bundles.

    Returns the one-column count of each piece, largest first.
    """
    if y < 1:
        raise InvalidBundle("decomposition needs at least one zero-column")
    q, extra = divmod(x, y)
    return [q + 1] * extra + [q] * (y - extra)


def decomposed_counts(inst: Instance, scheme: PartitionScheme) -> list[int]:
    """One-column counts of all pieces after decomposing every mixed bundle.

    Only zero-columns count as the bundle's zero side; 1-entries of the row
    are its one side.
    """
    zerocols = taxonomy(inst).zerocols
    counts = []
    for i, b in mixed_bundles(inst, scheme):
        zs = len(b & zerocols)
        if zs:
            counts += decompose(sum(inst.A[i][j] for j in b), zs)
    return counts


def small_rho_lower_bound(r: Fraction, rho_: Fraction) -> Fraction:
    """Value of bundling each one-column appearance with ``floor(1/rho)`` or one more zero-column.

    The "one more" size is taken as ``floor(1/rho) + 1`` so that the bound is
    continuous (and correct) when ``1/rho`` is an integer.
    """
    r, rho_ = Fraction(r), Fraction(rho_)
    if not 0 < rho_ < 1:
        raise DomainError(f"rho must lie in (0, 1), got {rho_}")
    lo = math.floor(1 / rho_)
    hi = lo + 1
    return (
        r
        + (1 - r) * (1 - rho_ * lo) * Fraction(hi, 1 + hi)
        + (1 - r) * (rho_ * hi - 1) * Fraction(lo, 1 + lo)
    )
