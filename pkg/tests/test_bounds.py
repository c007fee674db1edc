import random
from fractions import Fraction

import pytest
from scipy.optimize import linprog

from abmp.bounds import (
    NINE_TENTHS,
    LPInstance,
    case_one_floor,
    dual_vertices,
    instance_bound_audit,
    lp_solve,
    master_inequality,
    opt_upper_bound,
    small_rho_ratio,
)
from abmp.core import Instance
from abmp.errors import DomainError, Infeasible, NotUniform
from abmp.generators import random_instance, tight_4x4

from helpers import small_uniform_corpus

F = Fraction


def scipy_lp(r, rho, s):
    ks = list(range(s, 3 * s + 1))
    res = linprog(
        c=[k / (k + 1) for k in ks],
        A_ub=[[-k for k in ks]],
        b_ub=[-float(rho * (1 - r) - r)],
        A_eq=[[1] * len(ks)],
        b_eq=[float(1 - r)],
        bounds=[(0, None)] * len(ks),
        method="highs",
    )
    return res


def test_small_lp_by_hand():
    # theta_1 = theta_3 = 1/2 meets the demand of 2 at cost 1/4 + 3/8
    sol = lp_solve(LPInstance(0, 2, 1))
    assert sol.value == F(5, 8)
    assert sol.theta == {1: F(1, 2), 3: F(1, 2)}


def test_lp_matches_scipy():
    rng = random.Random(0)
    checked = 0
    for _ in range(300):
        r = F(rng.randint(0, 19), 20)
        rho = F(rng.randint(10, 100), 10)
        s = rng.randint(1, 6)
        lp = LPInstance(r, rho, s)
        ref = scipy_lp(r, rho, s)
        if not lp.feasible:
            assert ref.status == 2
            with pytest.raises(Infeasible):
                lp_solve(lp)
            continue
        sol = lp_solve(lp)
        assert abs(float(sol.value) - ref.fun) < 1e-9
        assert sum(sol.theta.values()) == 1 - r
        assert sum(k * t for k, t in sol.theta.items()) >= lp.demand
        checked += 1
    assert checked > 100


def test_dual_vertices_feasible_and_weak():
    for s in range(1, 11):
        dv = dual_vertices(F(1, 3), F(2), s)
        assert dv.feasible1 and dv.feasible2
    for r in (F(i, 20) for i in range(20)):
        for rho in (F(10 + i, 2) for i in range(0, 20)):
            for s in (1, 2, 3):
                lp = LPInstance(r, rho, s)
                if lp.feasible:
                    dv = dual_vertices(r, rho, s)
                    assert max(dv.d1, dv.d2) <= lp_solve(lp).value


def test_master_inequality_sample_points():
    for r, rho in ((0, 1), (0, 2), (F(1, 2), 3), (F(1, 20), 10), (1, 5)):
        rep = master_inequality(r, rho)
        assert rep.ok
        assert rep.slack >= 0
        assert not rep.s_at_boundary


def test_case_one_residual_above_closed_form():
    for r in (F(i, 20) for i in range(21)):
        for rho in (F(10 + i, 10) for i in range(91)):
            rep = master_inequality(r, rho)
            if rep.case == "I":
                residual = min(
                    r + dual_vertices(r, rho, s).d1 - NINE_TENTHS * opt_upper_bound(r, rho) for s in range(1, 11)
                )
                assert residual >= case_one_floor(rho)


def test_master_inequality_domain():
    with pytest.raises(DomainError):
        master_inequality(F(1, 2), F(1, 2))
    with pytest.raises(DomainError):
        LPInstance(F(3, 2), 1, 1)
    with pytest.raises(DomainError):
        LPInstance(0, 1, 0)


def test_opt_upper_bound():
    assert opt_upper_bound(F(1, 2), F(5, 3)) == F(13, 16)
    with pytest.raises(DomainError):
        opt_upper_bound(2, 1)


def test_small_rho_constant():
    assert abs(small_rho_ratio(1) - 0.971404) < 1e-6
    assert small_rho_ratio(2) > small_rho_ratio(1)


def test_audit_holds_on_corpus():
    audited = 0
    for inst in small_uniform_corpus(80, seed=21):
        rep = instance_bound_audit(inst)
        if rep.opt is None:
            assert rep.note.startswith("skipped")
            continue
        assert rep.holds
        audited += 1
    assert audited > 30
    assert instance_bound_audit(tight_4x4()).opt == F(5, 6)


def test_audit_rejects_weighted():
    with pytest.raises(NotUniform):
        instance_bound_audit(random_instance(2, 3, distribution="dirichlet", seed=1))
    assert instance_bound_audit(Instance.from_rows(["11"])).holds is None
