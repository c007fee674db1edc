"""Per-row welfare valuations.

Row ``i`` extracts from a column set ``S``::

    R_i(S) = alpha(S) + beta(S) * gamma(S) / (beta(S) + gamma(S))

where ``alpha`` is the mass of ``S`` on the row's 1-entries (column-covering
singletons), ``beta`` the mass of ``S`` on the row's 0-entries and ``gamma``
the mass of the row's 1-entries left outside ``S`` (which smooth the 0-entries
of ``S`` through a single mixed bundle).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from abmp.core import Instance
from abmp.errors import AlreadyPresent

ZERO = Fraction(0)


class ValuationOracle:
    """Value queries for one row of an instance."""

    def __init__(self, inst: Instance, row: int):
        self.inst = inst
        self.row = row
        self.ones = inst.row_ones(row)
        self.ones_mass = inst.mass(self.ones)

    def alpha(self, S: Iterable[int]) -> Fraction:
        return self.inst.mass(j for j in set(S) if j in self.ones)

    def beta(self, S: Iterable[int]) -> Fraction:
        return self.inst.mass(j for j in set(S) if j not in self.ones)

    def gamma(self, S: Iterable[int]) -> Fraction:
        return self.ones_mass - self.alpha(S)

    def __call__(self, S: Iterable[int]) -> Fraction:
        S = set(S)
        a, b = self.alpha(S), self.beta(S)
        g = self.ones_mass - a
        if b + g == 0:
            return a
        return a + b * g / (b + g)

    def marginal(self, S: Iterable[int], j: int) -> Fraction:
        S = set(S)
        if j in S:
            raise AlreadyPresent(f"column {j + 1} already in the set")
        return self(S | {j}) - self(S)

    def table(self) -> list[Fraction]:
        """``R_i`` on every subset, indexed by bitmask over columns."""
        m = self.inst.m
        p = self.inst.p
        alpha = [ZERO] * (1 << m)
        beta = [ZERO] * (1 << m)
        for mask in range(1, 1 << m):
            j = (mask & -mask).bit_length() - 1
            rest = mask & (mask - 1)
            if j in self.ones:
                alpha[mask] = alpha[rest] + p[j]
                beta[mask] = beta[rest]
            else:
                alpha[mask] = alpha[rest]
                beta[mask] = beta[rest] + p[j]
        out = []
        for mask in range(1 << m):
            a, b = alpha[mask], beta[mask]
            g = self.ones_mass - a
            out.append(a if b + g == 0 else a + b * g / (b + g))
        return out


def valuation(inst: Instance, i: int, S: Iterable[int]) -> Fraction:
    return ValuationOracle(inst, i)(S)


def marginal(inst: Instance, i: int, S: Iterable[int], j: int) -> Fraction:
    return ValuationOracle(inst, i).marginal(S, j)
