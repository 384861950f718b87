"""Dense two-phase simplex for the small linear programs built by the DEA models.

Problems are stated in a general form (``<=``, ``=``, ``>=`` rows and per-variable
bounds) and converted internally to ``min c.z, A z = b, z >= 0, b >= 0``.
Duals are recovered from the final basis and reported as the sensitivity of
the objective with respect to each row's right-hand side, for either sense.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IterationLimitError",
    "LinearProgram",
    "LPSolution",
    "Relation",
    "Sense",
    "SolverError",
    "Status",
    "ToleranceConfig",
    "solve_lp",
]


class Sense(str, enum.Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class SolverError(RuntimeError):
    """Base class for numerical or modelling failures inside a solve."""


class IterationLimitError(SolverError):
    """Raised when the simplex exceeds its iteration budget."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances shared by the LP, MILP and DEA layers."""

    pivot: float = 1e-9
    feasibility: float = 1e-7
    optimality: float = 1e-9
    integrality: float = 1e-6
    zero: float = 1e-6
    membership: float = 1e-6
    support: float = 1e-6
    max_iterations: int = 50_000

    def __post_init__(self) -> None:
        for name in ("pivot", "feasibility", "optimality", "integrality", "zero", "membership", "support"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"tolerance {name} must be positive and finite, got {value!r}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_TOLERANCES = ToleranceConfig()

# Tableau entries below this magnitude are flushed to zero after each pivot.
_FLUSH = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``sense c.x`` subject to ``A[i].x (<=|=|>=) rhs[i]`` and ``lower <= x <= upper``."""

    objective: np.ndarray
    A: np.ndarray
    relations: tuple[Relation, ...]
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    sense: Sense = Sense.MINIMIZE

    def __post_init__(self) -> None:
        c = np.array(self.objective, dtype=float).reshape(-1)
        n = c.size
        A = np.array(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, n)
        if A.ndim != 2 or A.shape[1] != n:
            raise ValueError(f"constraint matrix must have {n} columns, got shape {A.shape}")
        rels = tuple(Relation(r) for r in self.relations)
        b = np.array(self.rhs, dtype=float).reshape(-1)
        if len(rels) != A.shape[0] or b.size != A.shape[0]:
            raise ValueError("relations and rhs must have one entry per row")
        lo = np.zeros(n) if self.lower is None else np.array(self.lower, dtype=float).reshape(-1)
        up = np.full(n, np.inf) if self.upper is None else np.array(self.upper, dtype=float).reshape(-1)
        if lo.size != n or up.size != n:
            raise ValueError("bounds must have one entry per variable")
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("objective, matrix and rhs must be finite")
        if np.any(np.isnan(lo)) or np.any(np.isnan(up)) or np.any(lo == np.inf) or np.any(up == -np.inf):
            raise ValueError("invalid bounds")
        if np.any(lo > up):
            k = int(np.flatnonzero(lo > up)[0])
            raise ValueError(f"lower bound exceeds upper bound for variable {k}")
        object.__setattr__(self, "objective", _frozen(c))
        object.__setattr__(self, "A", _frozen(A))
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "rhs", _frozen(b))
        object.__setattr__(self, "lower", _frozen(lo))
        object.__setattr__(self, "upper", _frozen(up))
        object.__setattr__(self, "sense", Sense(self.sense))

    @classmethod
    def from_rows(
        cls,
        objective: Sequence[float],
        rows: Iterable[tuple[Sequence[float], str | Relation, float]] = (),
        lower: Sequence[float] | None = None,
        upper: Sequence[float] | None = None,
        sense: str | Sense = Sense.MINIMIZE,
    ) -> "LinearProgram":
        rows = list(rows)
        n = len(objective)
        A = np.array([r[0] for r in rows], dtype=float).reshape(len(rows), n)
        return cls(
            objective=objective,
            A=A,
            relations=tuple(Relation(r[1]) for r in rows),
            rhs=[r[2] for r in rows],
            lower=lower,
            upper=upper,
            sense=Sense(sense),
        )

    @property
    def n_vars(self) -> int:
        return self.objective.size

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]

    @property
    def rows(self) -> list[tuple[np.ndarray, Relation, float]]:
        return [(self.A[i], self.relations[i], float(self.rhs[i])) for i in range(self.n_rows)]

    def with_bounds(self, lower: np.ndarray, upper: np.ndarray) -> "LinearProgram":
        return replace(self, lower=lower, upper=upper)

    def row_activity(self, x: np.ndarray) -> np.ndarray:
        return self.A @ np.asarray(x, dtype=float)


@dataclass(frozen=True, eq=False)
class LPSolution:
    status: Status
    objective: float
    primal: np.ndarray
    duals: np.ndarray
    reduced_costs: np.ndarray
    dual_objective: float
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Standardized:
    """``x = offset + T z`` with ``z >= 0``, plus the equality system over ``z`` and slacks."""

    def __init__(self, p: LinearProgram):
        n = p.n_vars
        lo, up = p.lower, p.upper
        cols: list[tuple[int, float]] = []  # (user var, coefficient) per z column
        offset = np.zeros(n)
        bound_rows: list[tuple[int, float]] = []  # (z column, upper limit on z)
        for k in range(n):
            if lo[k] == up[k]:
                offset[k] = lo[k]
            elif np.isfinite(lo[k]):
                offset[k] = lo[k]
                cols.append((k, 1.0))
                if np.isfinite(up[k]):
                    bound_rows.append((len(cols) - 1, up[k] - lo[k]))
            elif np.isfinite(up[k]):
                offset[k] = up[k]
                cols.append((k, -1.0))
            else:
                cols.append((k, 1.0))
                cols.append((k, -1.0))
        T = np.zeros((n, len(cols)))
        for z, (k, coef) in enumerate(cols):
            T[k, z] = coef
        self.T = T
        self.offset = offset
        self.n_z = len(cols)

        sign = 1.0 if p.sense is Sense.MINIMIZE else -1.0
        self.sign = sign
        c_min = sign * p.objective
        self.c_min = c_min
        self.const = float(c_min @ offset)

        A_z = p.A @ T
        b_z = p.rhs - p.A @ offset
        rows_A: list[np.ndarray] = []
        rels: list[Relation] = []
        rhs: list[float] = []
        self.user_row: list[int] = []  # std row -> user row (-1 for bound rows)
        self.empty_rows: list[int] = []
        self.trivially_infeasible = False
        for i in range(p.n_rows):
            if not np.any(A_z[i]):
                # Empty after substitution: presolve it away.
                r, rel = b_z[i], p.relations[i]
                scale = max(1.0, abs(p.rhs[i]))
                ok = (
                    (rel is Relation.LE and r >= -1e-9 * scale)
                    or (rel is Relation.GE and r <= 1e-9 * scale)
                    or (rel is Relation.EQ and abs(r) <= 1e-9 * scale)
                )
                if not ok:
                    self.trivially_infeasible = True
                self.empty_rows.append(i)
                continue
            rows_A.append(A_z[i])
            rels.append(p.relations[i])
            rhs.append(b_z[i])
            self.user_row.append(i)
        for z, limit in bound_rows:
            e = np.zeros(self.n_z)
            e[z] = 1.0
            rows_A.append(e)
            rels.append(Relation.LE)
            rhs.append(limit)
            self.user_row.append(-1)

        k = len(rows_A)
        A = np.array(rows_A, dtype=float).reshape(k, self.n_z)
        b = np.array(rhs, dtype=float)
        flip = np.where(b < 0, -1.0, 1.0)
        A *= flip[:, None]
        b *= flip
        rels = [
            (Relation.GE if r is Relation.LE else Relation.LE if r is Relation.GE else r) if f < 0 else r
            for r, f in zip(rels, flip)
        ]
        self.flip = flip

        n_slack = sum(1 for r in rels if r is not Relation.EQ)
        S = np.zeros((k, n_slack))
        basis = np.full(k, -1, dtype=int)
        art_rows: list[int] = []
        s = 0
        for i, r in enumerate(rels):
            if r is Relation.LE:
                S[i, s] = 1.0
                basis[i] = self.n_z + s
                s += 1
            elif r is Relation.GE:
                S[i, s] = -1.0
                s += 1
                art_rows.append(i)
            else:
                art_rows.append(i)
        self.A_full = np.hstack([A, S])
        self.b = b
        self.n_cols = self.n_z + n_slack
        self.c_full = np.concatenate([T.T @ c_min, np.zeros(n_slack)])
        self.art_rows = art_rows
        self.basis = basis
        self.k = k


class _Simplex:
    def __init__(self, tol: ToleranceConfig):
        self.tol = tol
        self.iterations = 0

    def pivot(self, T: np.ndarray, basis: np.ndarray, p: int, q: int) -> None:
        T[p] /= T[p, q]
        f = T[:, q].copy()
        f[p] = 0.0
        T -= np.outer(f, T[p])
        T[np.abs(T) < _FLUSH] = 0.0
        np.maximum(T[:-1, -1], 0.0, out=T[:-1, -1])
        basis[p] = q

    def run(self, T: np.ndarray, basis: np.ndarray, eligible: np.ndarray) -> Status:
        """Minimize the cost row (last row) in place. Returns OPTIMAL or UNBOUNDED."""
        k = T.shape[0] - 1
        bland = False
        while True:
            r = T[-1, :-1]
            cand = np.flatnonzero((r < -self.tol.optimality) & eligible)
            if cand.size == 0:
                return Status.OPTIMAL
            if self.iterations >= self.tol.max_iterations:
                raise IterationLimitError(f"simplex exceeded {self.tol.max_iterations} iterations")
            self.iterations += 1
            # Dantzig pricing; Bland's lowest-index rule while pivots are degenerate.
            q = int(cand[0]) if bland else int(cand[np.argmin(r[cand])])
            col = T[:k, q]
            rows = np.flatnonzero(col > self.tol.pivot)
            if rows.size == 0:
                return Status.UNBOUNDED
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            p = int(ties[np.argmin(basis[ties])])
            bland = best <= _FLUSH
            self.pivot(T, basis, p, q)


def solve_lp(p: LinearProgram, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> LPSolution:
    """Solve ``p`` with a dense two-phase simplex.

    Raises :class:`IterationLimitError` when the iteration budget runs out;
    infeasible and unbounded problems are reported through ``status``.
    """
    n = p.n_vars
    nan_vec = np.full(n, np.nan)
    nan_rows = np.full(p.n_rows, np.nan)

    def fail(status: Status, iterations: int) -> LPSolution:
        return LPSolution(status, math.nan, nan_vec, nan_rows, nan_vec, math.nan, iterations)

    st = _Standardized(p)
    if st.trivially_infeasible:
        return fail(Status.INFEASIBLE, 0)

    k = st.k
    n_art = len(st.art_rows)
    T = np.zeros((k + 1, st.n_cols + n_art + 1))
    T[:k, : st.n_cols] = st.A_full
    T[:k, -1] = st.b
    basis = st.basis.copy()
    for a, i in enumerate(st.art_rows):
        T[i, st.n_cols + a] = 1.0
        basis[i] = st.n_cols + a
    simplex = _Simplex(tol)

    keep = np.ones(k, dtype=bool)  # original rows still in the system
    if n_art:
        # Phase 1: drive the sum of artificials to zero.
        T[-1, st.n_cols : st.n_cols + n_art] = 1.0
        for i in st.art_rows:
            T[-1] -= T[i]
        simplex.run(T, basis, np.ones(st.n_cols + n_art, dtype=bool))
        if -T[-1, -1] > tol.feasibility * max(1.0, float(np.max(np.abs(st.b), initial=0.0))):
            return fail(Status.INFEASIBLE, simplex.iterations)
        rows_left = np.ones(k, dtype=bool)
        for i in range(k):
            if basis[i] >= st.n_cols:
                nz = np.flatnonzero(np.abs(T[i, : st.n_cols]) > tol.pivot)
                if nz.size:
                    simplex.pivot(T, basis, i, int(nz[0]))
                else:
                    # Redundant: drop the original row whose artificial is stuck here.
                    rows_left[i] = False
                    keep[st.art_rows[basis[i] - st.n_cols]] = False
        T = np.vstack([T[:k][rows_left], T[-1:]])
        T = np.delete(T, np.s_[st.n_cols : st.n_cols + n_art], axis=1)
        basis = basis[rows_left]

    # Phase 2.
    T[-1] = 0.0
    T[-1, : st.n_cols] = st.c_full
    for i, j in enumerate(basis):
        if st.c_full[j] != 0.0:
            T[-1] -= st.c_full[j] * T[i]
    status = simplex.run(T, basis, np.ones(st.n_cols, dtype=bool))
    if status is Status.UNBOUNDED:
        return fail(Status.UNBOUNDED, simplex.iterations)

    z_full = np.zeros(st.n_cols)
    z_full[basis] = T[:-1, -1]
    x = st.offset + st.T @ z_full[: st.n_z]

    # Duals of the minimization form, from B^T y = c_B.
    B = st.A_full[keep][:, basis]
    y_kept = np.linalg.solve(B.T, st.c_full[basis]) if basis.size else np.zeros(0)
    y_std = np.zeros(k)
    y_std[keep] = y_kept
    y_std *= st.flip
    y_min = np.zeros(p.n_rows)
    for r, i in enumerate(st.user_row):
        if i >= 0:
            y_min[i] = y_std[r]

    red_min = st.c_min - p.A.T @ y_min
    dual_obj = float(p.rhs @ y_min)
    scale = max(1.0, float(np.max(np.abs(st.c_min), initial=0.0)))
    for j in range(n):
        rj = red_min[j]
        if abs(rj) <= 1e-9 * scale:
            continue
        bound = p.lower[j] if rj > 0 else p.upper[j]
        dual_obj += rj * bound if np.isfinite(bound) else -math.inf

    objective = float(p.objective @ x)
    return LPSolution(
        status=Status.OPTIMAL,
        objective=objective,
        primal=_frozen(x),
        duals=_frozen(st.sign * y_min + 0.0),
        reduced_costs=_frozen(st.sign * red_min + 0.0),
        dual_objective=float(st.sign * dual_obj),
        iterations=simplex.iterations,
    )
