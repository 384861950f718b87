"""Brute-force reference answers for small datasets.

These enumerate instead of optimizing over binaries, so they are only usable
when ``m + s <= 4`` and ``n <= 12``.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Mapping

import numpy as np

from .dataset import DMUDataset
from .lp import DEFAULT_TOLERANCES, LinearProgram, Relation, Sense, SolverError, Status, ToleranceConfig, solve_lp
from .models import (
    EfficiencyStatus,
    NotParetoEfficientError,
    _additive_program,
    classify_all,
    efficient_set,
    is_pareto_efficient,
)

__all__ = ["OracleRegimeError", "oracle_closest", "oracle_maximal_set", "MAX_DIMENSION", "MAX_DMUS"]

MAX_DIMENSION = 4
MAX_DMUS = 12


class OracleRegimeError(ValueError):
    """Dataset too large for exhaustive enumeration."""


def _check_regime(ds: DMUDataset) -> None:
    if ds.m + ds.s > MAX_DIMENSION or ds.n > MAX_DMUS:
        raise OracleRegimeError(
            f"oracle needs m+s <= {MAX_DIMENSION} and n <= {MAX_DMUS}; got m+s={ds.m + ds.s}, n={ds.n}"
        )


def _face_exists(ds: DMUDataset, on: tuple[int, ...], efficient: tuple[int, ...], tol: ToleranceConfig) -> bool:
    """Is there ``v, u >= 1`` with ``u.y_j - v.x_j`` zero on ``on`` and nonpositive on ``efficient``?"""
    m, s = ds.m, ds.s
    rows = []
    for j in efficient:
        a = np.concatenate([-ds.inputs[:, j], ds.outputs[:, j]])
        rows.append((a, Relation.EQ if j in on else Relation.LE, 0.0))
    lp = LinearProgram.from_rows(np.zeros(m + s), rows, lower=np.ones(m + s))
    return solve_lp(lp, tol).status is Status.OPTIMAL


def oracle_closest(
    ds: DMUDataset,
    o: int,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    statuses: Mapping[int, EfficiencyStatus] | None = None,
) -> tuple[float, tuple[np.ndarray, np.ndarray]]:
    """Minimum total slack to a dominating point on a face with all weights ``>= 1``.

    Enumerates every subset ``B`` of efficient DMUs with ``|B| <= m+s-1`` that
    spans such a face, and minimizes slack subject to representation by ``B``.
    """
    _check_regime(ds)
    if statuses is None:
        statuses = classify_all(ds, tol)
    eff = efficient_set(statuses)
    x, y = ds.column(o)
    best = math.inf
    best_point = (np.full(ds.m, np.nan), np.full(ds.s, np.nan))
    for size in range(1, ds.m + ds.s):
        for B in itertools.combinations(eff, size):
            if not _face_exists(ds, B, eff, tol):
                continue
            cols = list(B)
            sol = solve_lp(_additive_program(ds.inputs[:, cols], ds.outputs[:, cols], x, y, Sense.MINIMIZE), tol)
            if sol.status is Status.OPTIMAL and sol.objective < best - 1e-12:
                k = len(cols)
                sm = sol.primal[k : k + ds.m]
                sp = sol.primal[k + ds.m :]
                best = sol.objective
                best_point = (x - sm, y + sp)
    return best, best_point


def oracle_maximal_set(
    ds: DMUDataset,
    point: tuple[Iterable[float], Iterable[float]],
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    statuses: Mapping[int, EfficiencyStatus] | None = None,
) -> frozenset[int]:
    """Efficient DMUs that can carry positive weight in some exact representation of ``point``.

    One LP per efficient DMU ``j``: maximize ``mu_j`` subject to
    ``sum mu (x, y) = point``, ``mu >= 0``. The maxima are finite because every
    DMU has a positive input; ``j`` is a member when its maximum clears the
    membership threshold relative to the largest maximum.
    """
    _check_regime(ds)
    xp, yp = (np.asarray(p, dtype=float) for p in point)
    if statuses is None:
        statuses = classify_all(ds, tol)
    if not is_pareto_efficient(ds, (xp, yp), tol, statuses):
        raise NotParetoEfficientError("oracle_maximal_set needs a Pareto-efficient point")
    eff = list(efficient_set(statuses))
    A = np.vstack([ds.inputs[:, eff], ds.outputs[:, eff]])
    rhs = np.concatenate([xp, yp])
    best = {}
    for q, j in enumerate(eff):
        c = np.zeros(len(eff))
        c[q] = 1.0
        lp = LinearProgram(c, A, (Relation.EQ,) * A.shape[0], rhs, None, None, Sense.MAXIMIZE)
        sol = solve_lp(lp, tol)
        if sol.status is not Status.OPTIMAL:
            raise SolverError(f"oracle LP for DMU {ds.names[j]!r} returned {sol.status.value}")
        best[j] = sol.objective
    cut = tol.membership * max(1.0, max(best.values(), default=0.0))
    return frozenset(j for j, v in best.items() if v > cut)
