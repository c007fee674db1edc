"""Batch invariant checks behind ``abmp verify``.

Each suite returns a :class:`SuiteResult` whose ``rows`` are CSV-ready and
whose ``violations`` are the rows that failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from abmp.bounds import LPInstance, dual_vertices, lp_solve, master_inequality, small_rho_ratio
from abmp.generators import random_instance
from abmp.hardness import THRESHOLD, PartitionInstance, brute_force_dq, build_dq, subset_sum_witness
from abmp.oracle import brute_force_allocations, brute_force_schemes
from abmp.valuation import ValuationOracle

TARGETS = ("bounds-grid", "lp-duality", "submodularity", "dq-reduction", "oracle-equivalence")


@dataclass
class SuiteResult:
    target: str
    columns: list
    rows: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, row: dict, ok: bool) -> None:
        row = dict(row, ok=int(ok))
        self.rows.append(row)
        if not ok:
            self.violations.append(row)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.target}: {len(self.rows)} checks, {len(self.violations)} violations"


def rational_grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    out, x = [], Fraction(lo)
    while x <= hi:
        out.append(x)
        x += step
    return out


R_GRID = rational_grid(Fraction(0), Fraction(1), Fraction(1, 20))
RHO_GRID = rational_grid(Fraction(1), Fraction(10), Fraction(1, 10))


def bounds_grid(s_max: int = 10) -> SuiteResult:
    res = SuiteResult("bounds-grid", ["r", "rho", "s", "primal", "slack", "case", "case_residual", "s_at_boundary", "ok"])
    for r in R_GRID:
        for rho in RHO_GRID:
            rep = master_inequality(r, rho, s_max)
            res.add(
                {
                    "r": str(r),
                    "rho": str(rho),
                    "s": rep.s,
                    "primal": str(rep.primal),
                    "slack": str(rep.slack),
                    "case": rep.case,
                    "case_residual": str(rep.case_residual),
                    "s_at_boundary": int(rep.s_at_boundary),
                },
                rep.ok,
            )
    return res


def lp_duality(s_values=(1, 2, 3)) -> SuiteResult:
    """Weak duality of both dual vertices on a 21 x 20 x |s| grid, plus the small-rho constant."""
    res = SuiteResult("lp-duality", ["r", "rho", "s", "primal", "d1", "d2", "ok"])
    rhos = rational_grid(Fraction(1), Fraction(39, 4), Fraction(1, 2))[:20]
    for r in R_GRID:
        for rho in rhos:
            for s in s_values:
                lp = LPInstance(r, rho, s)
                if not lp.feasible:
                    continue
                primal = lp_solve(lp).value
                dv = dual_vertices(r, rho, s)
                ok = dv.feasible1 and dv.feasible2 and max(dv.d1, dv.d2) <= primal
                res.add({"r": str(r), "rho": str(rho), "s": s, "primal": str(primal), "d1": str(dv.d1), "d2": str(dv.d2)}, ok)
    const = small_rho_ratio(1)
    res.add({"r": "", "rho": "1/sqrt2", "s": "", "primal": f"{const:.6f}", "d1": "", "d2": ""}, const >= 0.97 and abs(const - 0.9714) <= 1e-3)
    return res


def submodularity(trials: int = 50, seed: int = 0, max_m: int = 5) -> SuiteResult:
    """Exhaustive monotonicity and diminishing-returns check of every row valuation."""
    res = SuiteResult("submodularity", ["instance", "row", "pairs_checked", "ok"])
    rng = random.Random(seed)
    for t in range(trials):
        n, m = rng.randint(1, 4), rng.randint(1, max_m)
        dist = rng.choice(["uniform", "dirichlet"])
        inst = random_instance(n, m, Fraction(rng.randint(1, 4), 5), dist, seed=rng.randrange(10**9))
        for i in range(n):
            ok, checked = check_submodular(ValuationOracle(inst, i).table(), m)
            res.add({"instance": t, "row": i, "pairs_checked": checked}, ok)
    return res


def check_submodular(table: list, m: int) -> tuple[bool, int]:
    """Exhaustive check over S subset T, j outside T; returns (ok, number of checks)."""
    checked = 0
    if table[0] != 0:
        return False, 0
    for T in range(1 << m):
        S = T
        while True:
            for j in range(m):
                bit = 1 << j
                if T & bit:
                    continue
                gs = table[S | bit] - table[S]
                gt = table[T | bit] - table[T]
                checked += 1
                if gs < 0 or gt < 0 or gs < gt:
                    return False, checked
            if S == 0:
                break
            S = (S - 1) & T
    return True, checked


def random_partition_instance(rng: random.Random, max_t: int = 12) -> PartitionInstance:
    t = rng.randint(1, max_t)
    w = [rng.randint(1, 20) for _ in range(t)]
    if t >= 2 and rng.random() < 0.5:
        # plant an equal split by fixing the last weight
        k = rng.randint(1, t - 1)
        diff = sum(w[:k]) - sum(w[k:-1])
        if diff > 0:
            w[-1] = diff
    return PartitionInstance(tuple(w))


def dq_reduction(trials: int = 100, seed: int = 0, max_t: int = 12) -> SuiteResult:
    res = SuiteResult("dq-reduction", ["weights", "dq_max", "subset_sum", "ok"])
    rng = random.Random(seed)
    for _ in range(trials):
        pi = random_partition_instance(rng, max_t)
        best, _ = brute_force_dq(build_dq(pi))
        split = pi.W % 2 == 0 and subset_sum_witness(pi.weights, pi.W // 2) is not None
        res.add(
            {"weights": " ".join(map(str, pi.weights)), "dq_max": str(best), "subset_sum": int(split)},
            (best >= THRESHOLD) == split,
        )
    return res


def oracle_equivalence(trials: int = 100, seed: int = 0) -> SuiteResult:
    res = SuiteResult("oracle-equivalence", ["instance", "n", "m", "schemes", "allocations", "ok"])
    rng = random.Random(seed)
    for t in range(trials):
        n, m = rng.randint(1, 3), rng.randint(1, 4)
        dist = rng.choice(["uniform", "dirichlet"])
        inst = random_instance(n, m, Fraction(rng.randint(1, 4), 5), dist, seed=rng.randrange(10**9))
        a = brute_force_schemes(inst).value
        b = brute_force_allocations(inst).value
        res.add({"instance": t, "n": n, "m": m, "schemes": str(a), "allocations": str(b)}, a == b)
    return res


def run(target: str, trials: int | None = None, seed: int = 0) -> SuiteResult:
    if target == "bounds-grid":
        return bounds_grid()
    if target == "lp-duality":
        return lp_duality()
    if target == "submodularity":
        return submodularity(trials or 50, seed)
    if target == "dq-reduction":
        return dq_reduction(trials or 100, seed)
    if target == "oracle-equivalence":
        return oracle_equivalence(trials or 100, seed)
    raise ValueError(f"unknown verify target {target!r}")
