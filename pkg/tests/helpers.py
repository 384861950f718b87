"""Shared test data builders."""

from __future__ import annotations

import numpy as np

from mcrs.dataset import DMUDataset

# Recorded seeds; change only together with any frozen expectations.
RANDOM_DATASET_SEED = 20_261_018
RANDOM_MILP_SEED = 7_341


def random_datasets(count: int = 20, seed: int = RANDOM_DATASET_SEED) -> list[DMUDataset]:
    """``count`` datasets with m=2, s=1, 2 <= n <= 8, values uniform in [1, 10]."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(2, 9))
        X = rng.uniform(1.0, 10.0, size=(2, n))
        Y = rng.uniform(1.0, 10.0, size=(1, n))
        out.append(DMUDataset(tuple(f"R{k}D{j + 1}" for j in range(n)), X, Y))
    return out


def random_milp(rng: np.random.Generator, n_bin: int, n_cont: int):
    """A feasible mixed-binary program: random rows built around a known feasible point."""
    from mcrs.lp import LinearProgram
    from mcrs.milp import MILPProgram

    n = n_cont + n_bin
    x0 = np.concatenate([rng.uniform(0, 5, n_cont), rng.integers(0, 2, n_bin).astype(float)])
    rows = []
    for _ in range(int(rng.integers(2, 6))):
        a = rng.integers(-4, 6, n).astype(float)
        rows.append((a, "<=", float(a @ x0 + rng.uniform(0, 3))))
    for q in range(n_bin):
        # continuous var q % n_cont only usable when its binary is on
        a = np.zeros(n)
        a[q % n_cont] = 1.0
        a[n_cont + q] = -8.0
        rows.append((a, "<=", max(0.0, float(a @ x0))))
    upper = np.concatenate([np.full(n_cont, 10.0), np.ones(n_bin)])
    c = rng.integers(-6, 7, n).astype(float)
    base = LinearProgram.from_rows(c, rows, upper=upper)
    return MILPProgram(base, tuple(range(n_cont, n)))


def enumerate_binaries_highs(p) -> float:
    """Global optimum by solving one LP per binary assignment with scipy's HiGHS."""
    import itertools

    from scipy.optimize import linprog

    from mcrs.lp import Relation, Sense

    base = p.base
    sgn = 1.0 if base.sense is Sense.MINIMIZE else -1.0
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for a, rel, b in base.rows:
        if rel is Relation.EQ:
            A_eq.append(a), b_eq.append(b)
        elif rel is Relation.LE:
            A_ub.append(a), b_ub.append(b)
        else:
            A_ub.append(-a), b_ub.append(-b)
    best = np.inf
    for bits in itertools.product((0.0, 1.0), repeat=len(p.binary_vars)):
        bounds = [(lo, None if np.isinf(up) else up) for lo, up in zip(base.lower, base.upper)]
        for j, v in zip(p.binary_vars, bits):
            bounds[j] = (v, v)
        res = linprog(
            sgn * base.objective,
            A_ub=np.array(A_ub) if A_ub else None,
            b_ub=b_ub or None,
            A_eq=np.array(A_eq) if A_eq else None,
            b_eq=b_eq or None,
            bounds=bounds,
            method="highs",
        )
        if res.status == 0:
            best = min(best, res.fun)
    return sgn * best


def frontier_heavy_datasets(count: int = 8, seed: int = 99) -> list[DMUDataset]:
    """Datasets where most DMUs sit near a curved frontier, with m+s in {3, 4} and n up to 12."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        m, s = [(2, 1), (3, 1), (2, 2), (1, 2)][k % 4]
        n = int(rng.integers(6, 13))
        X = np.empty((m, n))
        Y = np.empty((s, n))
        for j in range(n):
            d = rng.dirichlet(np.ones(m + s))
            z = 1.0 / np.sqrt(d + 0.05)  # convex-ish surface
            if rng.random() < 0.3:
                z[:m] *= rng.uniform(1.05, 1.5)  # push some inside
            X[:, j] = np.round(z[:m], 3)
            Y[:, j] = np.round(rng.uniform(1, 10, s) if s > 1 else 1.0 + 0 * z[m:], 3)
        out.append(DMUDataset(tuple(f"F{k}D{j + 1}" for j in range(n)), X, Y))
    return out
