"""Numeric certification of the 9/10 analysis for the uniform greedy algorithm.

The zero-column contribution of the greedy solution is lower-bounded by the
linear program ``LP(r, rho, s)``::

    minimise    sum_{k=s}^{3s} k/(k+1) * theta_k
    subject to  sum theta_k = 1 - r
                sum k * theta_k >= rho * (1 - r) - r
                theta_k >= 0

and the optimum is upper-bounded by ``r + (1 - r) * rho / (rho + 1)``.  All
checks here are exact over rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from abmp.core import Instance, taxonomy
from abmp.errors import DomainError, Infeasible, NotUniform
from abmp.oracle import DEFAULT_BUDGET, brute_force_allocations
from abmp.uniform import rho as scheme_rho

NINE_TENTHS = Fraction(9, 10)


def opt_upper_bound(r, rho) -> Fraction:
    r, rho = Fraction(r), Fraction(rho)
    if not 0 <= r <= 1 or rho < 0:
        raise DomainError("need r in [0, 1] and rho >= 0")
    return r + (1 - r) * rho / (rho + 1)


@dataclass(frozen=True)
class LPInstance:
    r: Fraction
    rho: Fraction
    s: int

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "rho", Fraction(self.rho))
        if not 0 <= self.r <= 1:
            raise DomainError(f"r must lie in [0, 1], got {self.r}")
        if self.s < 1:
            raise DomainError(f"s must be a positive integer, got {self.s}")

    @property
    def demand(self) -> Fraction:
        """Right-hand side of the one-column appearance constraint."""
        return self.rho * (1 - self.r) - self.r

    @property
    def feasible(self) -> bool:
        return 3 * self.s * (1 - self.r) >= self.demand


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    theta: dict  # k -> theta_k, nonzero entries only


def lp_solve(lp: LPInstance) -> LPSolution:
    """Exact optimum by enumerating basic feasible solutions.

    With two structural constraints a basic solution has at most two nonzero
    ``theta``; all singletons and all pairs with both constraints tight are tried.
    """
    L, b, s = 1 - lp.r, lp.demand, lp.s
    if not lp.feasible:
        raise Infeasible(f"LP(r={lp.r}, rho={lp.rho}, s={s}) has no feasible point")
    ks = range(s, 3 * s + 1)
    best: Optional[tuple[Fraction, dict]] = None
    for k in ks:
        if k * L >= b:
            val = Fraction(k, k + 1) * L
            if best is None or val < best[0]:
                best = (val, {k: L} if L else {})
    if L > 0:
        t = b / L
        for k1 in ks:
            if k1 > t:
                break
            c1 = Fraction(k1, k1 + 1)
            for k2 in range(max(k1 + 1, math.ceil(t)), 3 * s + 1):
                th2 = (b - k1 * L) / (k2 - k1)
                val = c1 * L + (Fraction(k2, k2 + 1) - c1) * th2
                if val < best[0]:
                    best = (val, {k: v for k, v in ((k1, L - th2), (k2, th2)) if v})
    return LPSolution(*best)


@dataclass(frozen=True)
class DualPoint:
    alpha: Fraction
    beta: Fraction

    def feasible(self, s: int) -> bool:
        return self.beta >= 0 and all(
            k * self.beta + self.alpha <= Fraction(k, k + 1) for k in range(s, 3 * s + 1)
        )

    def objective(self, r, rho) -> Fraction:
        r, rho = Fraction(r), Fraction(rho)
        return (1 - r) * self.alpha + ((1 - r) * rho - r) * self.beta


@dataclass(frozen=True)
class DualVertices:
    d1: Fraction
    d2: Fraction
    point1: DualPoint
    point2: DualPoint
    feasible1: bool
    feasible2: bool


def dual_vertices(r, rho, s: int) -> DualVertices:
    p1 = DualPoint(Fraction(s, s + 1), Fraction(0))
    den = (s + 1) * (3 * s + 1)
    p2 = DualPoint(Fraction(3 * s * s, den), Fraction(1, den))
    return DualVertices(
        p1.objective(r, rho), p2.objective(r, rho), p1, p2, p1.feasible(s), p2.feasible(s)
    )


@dataclass
class BoundReport:
    r: Fraction
    rho: Fraction
    s: Optional[int]  # minimising s among feasible LPs
    primal: Optional[Fraction]  # min over feasible s of LP(r, rho, s)
    d1: Optional[Fraction]
    d2: Optional[Fraction]
    slack: Optional[Fraction]  # r + primal - 9/10 * opt_upper_bound
    case: str
    case_residual: Fraction  # min over s of r + D_case - 9/10 * opt_upper_bound
    case_floor: Optional[Fraction]  # closed-form lower bound for Case I
    s_at_boundary: bool
    duality_violations: list = field(default_factory=list)
    infeasible_s: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.slack is not None
            and self.slack >= 0
            and self.case_residual >= 0
            and not self.duality_violations
        )


def case_one_floor(rho) -> Fraction:
    rho = Fraction(rho)
    return (rho - 2) ** 2 / (10 * rho * (rho + 1))


def master_inequality(r, rho, s_max: int = 10) -> BoundReport:
    """Check ``r + min_s LP(r, rho, s) >= 9/10 * (rho + r) / (rho + 1)`` for s = 1..s_max.

    Also evaluates the dual certificate of the matching case (point 1 when
    ``r >= (rho - 1) / rho``, point 2 otherwise) for every s, and weak duality
    of both points against every feasible primal.
    """
    r, rho = Fraction(r), Fraction(rho)
    if rho < 1:
        raise DomainError(f"the LP analysis covers rho >= 1, got {rho}")
    target = NINE_TENTHS * opt_upper_bound(r, rho)
    case = "I" if r >= (rho - 1) / rho else "II"
    best_s, best_val = None, None
    residuals, violations, infeasible = [], [], []
    for s in range(1, s_max + 1):
        dv = dual_vertices(r, rho, s)
        residuals.append(r + (dv.d1 if case == "I" else dv.d2) - target)
        lp = LPInstance(r, rho, s)
        if not lp.feasible:
            infeasible.append(s)
            continue
        val = lp_solve(lp).value
        for name, d, ok in (("D1", dv.d1, dv.feasible1), ("D2", dv.d2, dv.feasible2)):
            if ok and d > val:
                violations.append((s, name, d, val))
        if best_val is None or val < best_val:
            best_s, best_val = s, val
    dv = dual_vertices(r, rho, best_s) if best_s else None
    return BoundReport(
        r=r,
        rho=rho,
        s=best_s,
        primal=best_val,
        d1=dv.d1 if dv else None,
        d2=dv.d2 if dv else None,
        slack=None if best_val is None else r + best_val - target,
        case=case,
        case_residual=min(residuals),
        case_floor=case_one_floor(rho) if case == "I" else None,
        s_at_boundary=best_s == s_max,
        duality_violations=violations,
        infeasible_s=infeasible,
    )


def small_rho_ratio(k: int) -> float:
    """Worst ratio of the small-rho bound over rho in (1/(k+1), 1/k)."""
    return (1 + math.sqrt(k * (k + 1))) ** 2 / ((k + 1) * (k + 2))


@dataclass
class AuditReport:
    opt: Optional[Fraction]
    r: Fraction
    rho: Optional[Fraction]
    bound: Optional[Fraction]
    holds: Optional[bool]
    note: str = ""


def instance_bound_audit(inst: Instance, budget: int = DEFAULT_BUDGET) -> AuditReport:
    """Compare the exact optimum with the rho-based upper bound of its optimal scheme."""
    if not inst.uniform:
        raise NotUniform("the rho upper bound is stated for uniform instances")
    tax = taxonomy(inst)
    if not tax.zerocols:
        return AuditReport(None, tax.r, None, None, None, note="skipped: NoZeroColumns")
    res = brute_force_allocations(inst, budget)
    rho_ = scheme_rho(inst, res.scheme)
    bound = opt_upper_bound(tax.r, rho_)
    return AuditReport(res.value, tax.r, rho_, bound, res.value <= bound)
