"""Exact optimal partition values for small instances.

Two independent routes:

* :func:`brute_force_schemes` searches partition schemes directly, one set
  partition per row (restricted-growth-string enumeration).
* :func:`brute_force_allocations` searches allocations of columns to rows
  (or to nobody) under the row valuations of :mod:`abmp.valuation`.

The two must agree; the test-suite checks that they do.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from abmp.core import Instance, PartitionScheme
from abmp.errors import BudgetExceeded
from abmp.valuation import ValuationOracle

DEFAULT_BUDGET = 10**7

# One entry per column: the row whose valuation collects it, or None (unassigned).
Allocation = tuple  # tuple[Optional[int], ...]


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    scheme: PartitionScheme
    allocation: Optional[Allocation] = None


def allocation_sets(alloc: Allocation, n: int) -> list[frozenset]:
    sets: list[set[int]] = [set() for _ in range(n)]
    for j, i in enumerate(alloc):
        if i is not None:
            sets[i].add(j)
    return [frozenset(s) for s in sets]


def welfare_of_allocation(inst: Instance, alloc: Allocation) -> Fraction:
    return sum(
        (ValuationOracle(inst, i)(S) for i, S in enumerate(allocation_sets(alloc, inst.n))),
        Fraction(0),
    )


def allocation_to_scheme(inst: Instance, alloc: Allocation) -> PartitionScheme:
    """Realise an allocation as a partition scheme.

    Row ``i`` gets a covering singleton for each of its 1-entries it owns, one
    mixed bundle joining the 0-entries it owns with its unowned 1-entries, and
    a single all-zero bundle for the remaining 0-entries.
    """
    rows = []
    for i, S in enumerate(allocation_sets(alloc, inst.n)):
        ones, zeros = inst.row_ones(i), inst.row_zeros(i)
        bundles = [frozenset([j]) for j in sorted(S & ones)]
        owned_zeros = S & zeros
        left = ones - S
        if owned_zeros:
            bundles.append(owned_zeros | left)
        else:
            bundles += [frozenset([j]) for j in sorted(left)]
        if zeros - owned_zeros:
            bundles.append(zeros - owned_zeros)
        rows.append(tuple(bundles))
    return PartitionScheme(tuple(rows))


def _int_tables(inst: Instance) -> tuple[list[list[int]], int]:
    tables = [ValuationOracle(inst, i).table() for i in range(inst.n)]
    denom = math.lcm(*(v.denominator for t in tables for v in t)) if tables else 1
    return [[v.numerator * (denom // v.denominator) for v in t] for t in tables], denom


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _best_welfare(T: list[list[int]], forced: list[int], free: int) -> int:
    """Max of sum_i T[i][forced[i] | S_i] over disjoint S_i within ``free``."""
    n = len(T)
    if n == 0:
        return 0
    subs = list(_submasks(free))
    g = dict.fromkeys(subs, 0)
    for i in range(n - 1, 0, -1):
        Ti, Fi = T[i], forced[i]
        g = {mask: max(Ti[Fi | s] + g[mask ^ s] for s in _submasks(mask)) for mask in subs}
    T0, F0 = T[0], forced[0]
    return max(T0[F0 | s] + g[free ^ s] for s in _submasks(free))


def brute_force_allocations(inst: Instance, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Maximum welfare over all ``(n+1)^m`` allocations.

    The search is a subset dynamic programme over rows, which covers every
    allocation implicitly.  Among optimal allocations the lexicographically
    smallest vector is returned (rows ordered by index, unassigned last).
    """
    n, m = inst.n, inst.m
    if (n + 1) ** m > budget:
        raise BudgetExceeded(f"(n+1)^m = {(n + 1) ** m} exceeds budget {budget}")
    T, denom = _int_tables(inst)
    forced = [0] * n
    free = (1 << m) - 1
    best = _best_welfare(T, forced, free)
    alloc: list[Optional[int]] = []
    for j in range(m):
        bit = 1 << j
        free ^= bit
        for c in range(n):
            forced[c] |= bit
            if _best_welfare(T, forced, free) == best:
                alloc.append(c)
                break
            forced[c] ^= bit
        else:
            alloc.append(None)
    alloc_t = tuple(alloc)
    scheme = allocation_to_scheme(inst, alloc_t)
    value = Fraction(best, denom)
    return OracleResult(value, scheme, alloc_t)


def set_partitions(items: Sequence) -> Iterator[tuple[frozenset, ...]]:
    """All set partitions of ``items`` in restricted-growth-string order."""
    items = list(items)
    k = len(items)
    if k == 0:
        yield ()
        return
    rgs = [0] * k
    while True:
        blocks: list[list] = [[] for _ in range(max(rgs) + 1)]
        for x, b in zip(items, rgs):
            blocks[b].append(x)
        yield tuple(frozenset(b) for b in blocks)
        # next RGS: bump the rightmost position that may still grow
        pos = k - 1
        while pos > 0 and rgs[pos] > max(rgs[:pos]):
            pos -= 1
        if pos == 0:
            return
        rgs[pos] += 1
        for q in range(pos + 1, k):
            rgs[q] = 0


def bell(k: int) -> int:
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def _row_candidates(inst: Instance, i: int, parts: Iterable[tuple[frozenset, ...]], track_cover: bool) -> list:
    """Distinct weighted smooth rows ``p_j * A^B_ij`` with the first partition producing them.

    With ``track_cover`` the set of columns the partition covers in this row is
    part of the key, so schemes differing only in their cover stay distinct.
    """
    out: dict[tuple, tuple] = {}
    A, p = inst.A[i], inst.p
    for part in parts:
        vals = [Fraction(0)] * inst.m
        covered = set()
        for b in part:
            tot = sum(p[j] for j in b)
            v = sum(p[j] for j in b if A[j]) / tot
            for j in b:
                vals[j] = p[j] * v
            if track_cover and len(b) == 1 and v == 1:
                covered |= b
        out.setdefault((tuple(vals), frozenset(covered)), part)
    return [(vals, cov, part) for (vals, cov), part in out.items()]


def brute_force_schemes(
    inst: Instance, budget: int = DEFAULT_BUDGET, full_cover_only: bool = False
) -> OracleResult:
    """Maximum partition value by searching every scheme (``Bell(m)^n`` of them).

    Rows whose partitions induce identical smooth rows are collapsed before the
    cross product; the first scheme reaching the maximum in enumeration order
    is returned.  ``full_cover_only`` restricts the search to schemes that
    fully cover the one-columns.
    """
    n, m = inst.n, inst.m
    if bell(m) ** n > budget:
        raise BudgetExceeded(f"Bell(m)^n = {bell(m) ** n} exceeds budget {budget}")
    if n == 0:
        return OracleResult(Fraction(0), PartitionScheme(()))
    parts = list(set_partitions(range(m)))
    onecols = frozenset(j for j in range(m) if any(row[j] for row in inst.A))
    cands = [_row_candidates(inst, i, parts, full_cover_only) for i in range(n)]
    denom = math.lcm(*(x.denominator for row in cands for v, _, _ in row for x in v))
    icands = [
        [(tuple(x.numerator * (denom // x.denominator) for x in v), cov, part) for v, cov, part in row]
        for row in cands
    ]
    best, best_combo = None, None
    for combo in itertools.product(*icands):
        if full_cover_only and frozenset().union(*(c[1] for c in combo)) != onecols:
            continue
        val = sum(max(c[0][j] for c in combo) for j in range(m))
        if best is None or val > best:
            best, best_combo = val, combo
    if best_combo is None:
        raise BudgetExceeded("no scheme satisfied the search restriction")
    scheme = PartitionScheme(tuple(c[2] for c in best_combo))
    return OracleResult(Fraction(best, denom), scheme)
