"""Welfare-maximisation algorithms for arbitrary column distributions.

Rows act as agents with the monotone submodular valuations of
:mod:`abmp.valuation`; a partition scheme is recovered from any allocation
with :func:`abmp.oracle.allocation_to_scheme`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from abmp.core import Instance, partition_value, taxonomy
from abmp.oracle import Allocation, OracleResult, allocation_to_scheme, welfare_of_allocation
from abmp.uniform import FIRST_FIT, CoverPolicy, cover_phase
from abmp.valuation import ValuationOracle

DEFAULT_STEPS = 100
DEFAULT_SAMPLES = 200
DEFAULT_DRAWS = 20


def lehmann_greedy(inst: Instance, policy: CoverPolicy = FIRST_FIT) -> OracleResult:
    """Item-by-item greedy: cover the one-columns, then give each zero-column
    to the row with the largest marginal value (ties to the lowest row).

    A zero-column whose best marginal is 0 is left unassigned.
    """
    cover = cover_phase(inst, policy)
    owner: list[Optional[int]] = [None] * inst.m
    for j, i in cover.row_of().items():
        owner[j] = i
    oracles = [ValuationOracle(inst, i) for i in range(inst.n)]
    sets = [set(c) for c in cover.covered]
    for j in sorted(taxonomy(inst).zerocols):
        gains = [oracles[i].marginal(sets[i], j) for i in range(inst.n)]
        if not gains or max(gains) == 0:
            continue
        best = max(range(inst.n), key=lambda i: (gains[i], -i))
        sets[best].add(j)
        owner[j] = best
    alloc = tuple(owner)
    scheme = allocation_to_scheme(inst, alloc)
    return OracleResult(partition_value(inst, scheme), scheme, alloc)


def _arrays(inst: Instance):
    A = np.array(inst.A, dtype=float).reshape(inst.n, inst.m)
    p = np.array([float(x) for x in inst.p])
    return A, p, A @ p


def _row_values(alpha, beta, gamma):
    den = beta + gamma
    with np.errstate(invalid="ignore", divide="ignore"):
        mixed = np.where(den > 0, beta * gamma / np.where(den > 0, den, 1.0), 0.0)
    return alpha + mixed


def _sample_stats(A, p, G, X):
    """alpha, beta, gamma per (sample, row) for inclusion indicators X (samples, n, m)."""
    alpha = (X * A * p).sum(axis=2)
    beta = (X * (1 - A) * p).sum(axis=2)
    return alpha, beta, G[None, :] - alpha


def marginal_estimates(inst: Instance, x: np.ndarray, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Monte-Carlo estimate of E[R_i(S_i + j) - R_i(S_i)] with S drawn from x."""
    A, p, G = _arrays(inst)
    X = (rng.random((samples, inst.n, inst.m)) < x[None]).astype(float)
    alpha, beta, gamma = _sample_stats(A, p, G, X)
    base = _row_values(alpha, beta, gamma)[:, :, None]
    a, b, g = alpha[:, :, None], beta[:, :, None], gamma[:, :, None]
    pa = (A * p)[None]
    pz = ((1 - A) * p)[None]
    gain = _row_values(a + pa, b + pz, g - pa) - base
    gain = np.where(X > 0, 0.0, gain)
    return gain.mean(axis=0)


def multilinear_estimate(inst: Instance, x: np.ndarray, samples: int, seed: int = 0) -> tuple[float, float]:
    """Sample mean of total welfare under independent inclusion, and its standard error."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(2,)))
    A, p, G = _arrays(inst)
    X = (rng.random((samples, inst.n, inst.m)) < np.asarray(x)[None]).astype(float)
    totals = _row_values(*_sample_stats(A, p, G, X)).sum(axis=1)
    se = totals.std(ddof=1) / np.sqrt(samples) if samples > 1 else float("inf")
    return float(totals.mean()), float(se)


def continuous_phase(inst: Instance, steps: int, samples: int, seed: int) -> np.ndarray:
    """Fractional allocation built by ``steps`` increments of 1/steps.

    At each step every column moves towards the row with the largest
    estimated marginal; column sums therefore never exceed 1.
    """
    x = np.zeros((inst.n, inst.m))
    if inst.n == 0:
        return x
    dt = 1.0 / steps
    for step in range(steps):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0, step)))
        w = marginal_estimates(inst, x, samples, rng)
        best = w.argmax(axis=0)
        for j in range(inst.m):
            if w[best[j], j] > 1e-15:
                x[best[j], j] += dt
    return x


def round_allocation(x: np.ndarray, rng: np.random.Generator) -> Allocation:
    """Send column j to row i with probability x[i, j]; unassigned with the rest."""
    n, m = x.shape
    u = rng.random(m)
    cum = np.cumsum(x, axis=0)
    out = []
    for j in range(m):
        hit = np.nonzero(u[j] < cum[:, j])[0]
        out.append(int(hit[0]) if hit.size else None)
    return tuple(out)


def continuous_greedy(
    inst: Instance,
    steps: int = DEFAULT_STEPS,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    draws: int = DEFAULT_DRAWS,
) -> OracleResult:
    """Continuous greedy on the multilinear extension, then independent rounding.

    The best of ``draws`` rounded allocations is kept, compared by exact welfare;
    the reported value is the exact partition value of its scheme.
    """
    if steps < 1 or samples < 1 or draws < 1:
        raise ValueError("steps, samples and draws must be positive")
    x = continuous_phase(inst, steps, samples, seed)
    best_alloc, best_w = None, None
    for d in range(draws):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, d)))
        alloc = round_allocation(x, rng)
        w = welfare_of_allocation(inst, alloc)
        if best_w is None or w > best_w:
            best_alloc, best_w = alloc, w
    scheme = allocation_to_scheme(inst, best_alloc)
    return OracleResult(partition_value(inst, scheme), scheme, best_alloc)

