"""Demand queries are as hard as PARTITION.

A PARTITION instance ``w_1..w_t`` (total ``W``) becomes a one-row matrix with
``t`` ones of probability ``w_j / (2W)`` and a single zero of probability
``1/2``; item prices are ``5 w_j / (18 W)`` and 0.  A set beats ``5/18`` exactly
when the weights left out of it sum to ``W/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from abmp.core import Instance
from abmp.errors import BadParameters, BudgetExceeded
from abmp.valuation import ValuationOracle

THRESHOLD = Fraction(5, 18)
DEFAULT_MAX_ITEMS = 20


@dataclass(frozen=True)
class PartitionInstance:
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if not w or any(x <= 0 for x in w):
            raise BadParameters("PARTITION needs at least one positive integer weight")
        object.__setattr__(self, "weights", w)

    @property
    def t(self) -> int:
        return len(self.weights)

    @property
    def W(self) -> int:
        return sum(self.weights)


@dataclass(frozen=True)
class DQInstance:
    source: PartitionInstance
    instance: Instance  # 1 x (t+1); the last column is the zero entry
    prices: tuple[Fraction, ...]
    threshold: Fraction = THRESHOLD

    @property
    def zero_column(self) -> int:
        return self.source.t


def parse_partition(text: str) -> PartitionInstance:
    try:
        return PartitionInstance(tuple(int(tok) for tok in text.split()))
    except ValueError:
        raise BadParameters("expected whitespace-separated integers") from None


def build_dq(pi: PartitionInstance) -> DQInstance:
    W = pi.W
    p = tuple(Fraction(w, 2 * W) for w in pi.weights) + (Fraction(1, 2),)
    q = tuple(Fraction(5 * w, 18 * W) for w in pi.weights) + (Fraction(0),)
    inst = Instance(((1,) * pi.t + (0,),), p)
    return DQInstance(pi, inst, q)


def f_form(W: int, z) -> Fraction:
    """Demand-query value as a function of the weight ``z`` left outside the set."""
    z = Fraction(z)
    return Fraction(2, 9) - 2 * z / (9 * W) + z / (2 * W + 2 * z)


def dq_objective(dq: DQInstance, S: Iterable[int], force_zero_column: bool = True) -> Fraction:
    """``R(S) - price(S)`` for the single row.

    By default the price-free zero column is added to ``S``; without it the
    mixed term vanishes and the value is ``2/9 - 2z/(9W)``, never above the
    forced value.
    """
    S = set(S)
    if force_zero_column:
        S.add(dq.zero_column)
    return ValuationOracle(dq.instance, 0)(S) - sum((dq.prices[j] for j in S), Fraction(0))


def _mask_to_set(mask: int, k: int) -> frozenset:
    return frozenset(j for j in range(k) if mask >> j & 1)


def brute_force_dq(
    dq: DQInstance, max_items: int = DEFAULT_MAX_ITEMS
) -> tuple[Fraction, frozenset]:
    """Exhaustive maximum of the objective over all subsets of the ``t+1`` columns.

    The objective depends on ``S`` only through its weight inside ``[t]`` and
    whether it holds the zero column, so each such pair is evaluated once.
    Returns the first maximiser in bitmask order.
    """
    t = dq.source.t
    if t > max_items:
        raise BudgetExceeded(f"t = {t} exceeds the brute-force limit {max_items}")
    w = dq.source.weights
    sums = [0] * (1 << t)
    for mask in range(1, 1 << t):
        low = (mask & -mask).bit_length() - 1
        sums[mask] = sums[mask & (mask - 1)] + w[low]
    cache: dict[tuple[int, bool], Fraction] = {}
    best, arg = None, 0
    for mask in range(1 << (t + 1)):
        key = (sums[mask & ((1 << t) - 1)], bool(mask >> t & 1))
        if key not in cache:
            cache[key] = dq_objective(dq, _mask_to_set(mask, t + 1), force_zero_column=False)
        if best is None or cache[key] > best:
            best, arg = cache[key], mask
    return best, _mask_to_set(arg, t + 1)


def subset_sum_witness(weights: Sequence[int], target: int) -> Optional[frozenset]:
    """Indices of a subset summing to ``target`` (pseudo-polynomial DP), or None."""
    reach: dict[int, Optional[tuple[int, int]]] = {0: None}
    for idx, w in enumerate(weights):
        for s in sorted(reach, reverse=True):
            if s + w <= target and s + w not in reach:
                reach[s + w] = (idx, s)
    if target not in reach:
        return None
    out, s = set(), target
    while reach[s] is not None:
        idx, s = reach[s]
        out.add(idx)
    return frozenset(out)


def partition_witness(pi: PartitionInstance, max_items: int = DEFAULT_MAX_ITEMS) -> Optional[frozenset]:
    """Items left out of the best demand-query set when it reaches 5/18, else None."""
    if pi.W % 2:
        return None
    best, S = brute_force_dq(build_dq(pi), max_items)
    if best < THRESHOLD:
        return None
    return frozenset(range(pi.t)) - S


def partition_decider(pi: PartitionInstance, max_items: int = DEFAULT_MAX_ITEMS) -> bool:
    """Decide PARTITION through the demand query; cross-checked by subset sum."""
    if pi.W % 2:
        return False
    via_dq = brute_force_dq(build_dq(pi), max_items)[0] >= THRESHOLD
    direct = subset_sum_witness(pi.weights, pi.W // 2) is not None
    if via_dq != direct:
        raise AssertionError(f"demand-query verdict {via_dq} disagrees with subset sum on {pi.weights}")
    return via_dq
