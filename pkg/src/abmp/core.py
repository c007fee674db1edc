"""Instances, partition schemes, smooth matrices and partition values.

Everything here is exact: probabilities and smooth values are
:class:`fractions.Fraction`, columns and rows are 0-indexed.  Human-facing
renderings (``PartitionScheme.format``) switch to 1-indexed columns.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from abmp.errors import EmptyBundle, InvalidInstance, InvalidScheme

Bundle = frozenset  # frozenset[int]


@dataclass(frozen=True)
class Instance:
    """A binary matrix ``A`` (n x m) with a probability vector ``p`` over columns."""

    A: tuple[tuple[int, ...], ...]
    p: tuple[Fraction, ...]

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        p = tuple(Fraction(x) for x in self.p)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "p", p)
        m = len(p)
        for i, row in enumerate(A):
            if len(row) != m:
                raise InvalidInstance(f"row {i + 1} has {len(row)} entries, expected {m}")
            if any(v not in (0, 1) for v in row):
                raise InvalidInstance(f"row {i + 1} is not binary")
        if any(x <= 0 for x in p):
            raise InvalidInstance("column probabilities must be positive")
        if m and sum(p) != 1:
            raise InvalidInstance(f"probabilities sum to {sum(p)}, not 1")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int] | str], p: Sequence | None = None) -> "Instance":
        """Build from rows given as ``"0110"`` strings or 0/1 sequences; ``p=None`` means uniform."""
        A = tuple(tuple(int(c) for c in row) for row in rows)
        m = len(A[0]) if A else len(p or ())
        if p is None:
            p = (Fraction(1, m),) * m
        return cls(A, tuple(p))

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.p)

    @property
    def uniform(self) -> bool:
        return len(set(self.p)) <= 1

    def mass(self, cols: Iterable[int]) -> Fraction:
        return sum((self.p[j] for j in cols), Fraction(0))

    def row_ones(self, i: int) -> frozenset:
        return frozenset(j for j, v in enumerate(self.A[i]) if v)

    def row_zeros(self, i: int) -> frozenset:
        return frozenset(j for j, v in enumerate(self.A[i]) if not v)

    def restrict(self, cols: Sequence[int]) -> "Instance":
        """Sub-instance on ``cols`` with probabilities renormalised."""
        total = self.mass(cols)
        return Instance(
            tuple(tuple(row[j] for j in cols) for row in self.A),
            tuple(self.p[j] / total for j in cols),
        )


@dataclass(frozen=True)
class ColumnTaxonomy:
    onecols: frozenset
    zerocols: frozenset
    row_ones: tuple[frozenset, ...]
    row_zeros: tuple[frozenset, ...]
    r: Fraction


def taxonomy(inst: Instance) -> ColumnTaxonomy:
    row_ones = tuple(inst.row_ones(i) for i in range(inst.n))
    row_zeros = tuple(inst.row_zeros(i) for i in range(inst.n))
    onecols = frozenset().union(*row_ones)
    zerocols = frozenset(range(inst.m)) - onecols
    return ColumnTaxonomy(onecols, zerocols, row_ones, row_zeros, inst.mass(onecols))


@dataclass(frozen=True)
class PartitionScheme:
    """One partition of the column set per row; ``rows[i]`` is a tuple of bundles."""

    rows: tuple[tuple[frozenset, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(frozenset(b) for b in row) for row in self.rows)
        for i, row in enumerate(rows):
            if any(not b for b in row):
                raise EmptyBundle(f"row {i + 1} contains an empty bundle")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_one_based(cls, rows: Iterable[Iterable[Iterable[int]]]) -> "PartitionScheme":
        return cls(tuple(tuple(frozenset(j - 1 for j in b) for b in row) for row in rows))

    @classmethod
    def singletons(cls, n: int, m: int) -> "PartitionScheme":
        return cls(tuple(tuple(frozenset([j]) for j in range(m)) for _ in range(n)))

    def validate(self, inst: Instance) -> None:
        if len(self.rows) != inst.n:
            raise InvalidScheme(f"scheme has {len(self.rows)} rows, instance has {inst.n}")
        full = set(range(inst.m))
        for i, row in enumerate(self.rows):
            seen: set[int] = set()
            for b in row:
                if seen & b:
                    raise InvalidScheme(f"row {i + 1}: bundles overlap")
                seen |= b
            if seen != full:
                raise InvalidScheme(f"row {i + 1}: bundles do not cover exactly the columns")

    def bundle_of(self, i: int, j: int) -> frozenset:
        for b in self.rows[i]:
            if j in b:
                return b
        raise InvalidScheme(f"column {j + 1} missing from row {i + 1}")

    def canonical(self) -> "PartitionScheme":
        return PartitionScheme(tuple(tuple(sorted(row, key=min)) for row in self.rows))

    def format(self) -> str:
        """Rows in order, bundles sorted by minimum element, 1-indexed columns."""
        lines = []
        for i, row in enumerate(self.canonical().rows):
            bundles = " ".join("{" + ",".join(str(j + 1) for j in sorted(b)) + "}" for b in row)
            lines.append(f"B{i + 1}: {bundles}")
        return "\n".join(lines)


class BundleClass(enum.Enum):
    ALL_ZERO = "all-zero"
    ALL_ONE = "all-one"
    COLUMN_COVERING = "column-covering"
    MIXED = "mixed"


def classify_bundle(inst: Instance, row: int, bundle: Iterable[int]) -> BundleClass:
    bundle = frozenset(bundle)
    if not bundle:
        raise EmptyBundle("cannot classify an empty bundle")
    if not all(0 <= j < inst.m for j in bundle):
        raise InvalidScheme("bundle refers to a column outside the instance")
    ones = sum(inst.A[row][j] for j in bundle)
    if ones == 0:
        return BundleClass.ALL_ZERO
    if ones < len(bundle):
        return BundleClass.MIXED
    return BundleClass.COLUMN_COVERING if len(bundle) == 1 else BundleClass.ALL_ONE


def smooth(inst: Instance, scheme: PartitionScheme) -> tuple[tuple[Fraction, ...], ...]:
    """Smooth matrix: each entry replaced by the p-weighted mean of its bundle."""
    scheme.validate(inst)
    out = []
    for i, row in enumerate(scheme.rows):
        vals = [Fraction(0)] * inst.m
        for b in row:
            v = inst.mass(j for j in b if inst.A[i][j]) / inst.mass(b)
            for j in b:
                vals[j] = v
        out.append(tuple(vals))
    return tuple(out)


def partition_value(inst: Instance, scheme: PartitionScheme) -> Fraction:
    """Expected maximum column entry of the smooth matrix."""
    sm = smooth(inst, scheme)
    if not sm:
        return Fraction(0)
    return sum((inst.p[j] * max(row[j] for row in sm) for j in range(inst.m)), Fraction(0))


def argmax_rows(inst: Instance, scheme: PartitionScheme) -> tuple[int, ...]:
    """Row achieving the column maximum of the smooth matrix; ties go to the lowest row."""
    sm = smooth(inst, scheme)
    return tuple(max(range(inst.n), key=lambda i: (sm[i][j], -i)) for j in range(inst.m))


class CoverCheck(NamedTuple):
    full: bool
    pairs: list  # (row, column) pairs, 0-indexed


def is_full_cover(inst: Instance, scheme: PartitionScheme) -> CoverCheck:
    scheme.validate(inst)
    pairs = []
    for i, row in enumerate(scheme.rows):
        for b in row:
            if len(b) == 1:
                (j,) = b
                if inst.A[i][j]:
                    pairs.append((i, j))
    covered = {j for _, j in pairs}
    return CoverCheck(taxonomy(inst).onecols <= covered, sorted(pairs))
