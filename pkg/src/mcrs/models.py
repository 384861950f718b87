"""DEA models under constant returns to scale.

* :func:`classify_all` -- efficient / extreme-efficient / inefficient status.
* :func:`solve_additive` -- furthest Pareto projection (max total slack).
* :func:`solve_madd` -- closest Pareto projection, a big-M MILP that couples the
  projection to a supporting hyperplane with all weights ``>= 1``.
* :func:`support_set` -- candidates lying on that hyperplane.
* :func:`solve_mcrs` -- maximal reference set of a fixed Pareto point: an LP that
  imposes strict complementarity between representation weights ``mu`` and
  hyperplane gaps ``t`` and maximizes the smallest ``mu_j + t_j``.
* :func:`solve_maximal_frs` -- the same construction over the additive model's
  optimal face, giving every DMU that carries weight in some furthest solution.

DMUs are addressed by 0-based column index throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .dataset import DMUDataset
from .lp import (
    DEFAULT_TOLERANCES,
    LinearProgram,
    Relation,
    Sense,
    SolverError,
    Status,
    ToleranceConfig,
    solve_lp,
)
from .milp import DEFAULT_NODE_LIMIT, MILPProgram, solve_milp

__all__ = [
    "BIG_M_FACTOR",
    "BigMSaturationError",
    "EfficiencyStatus",
    "Hyperplane",
    "Mode",
    "NotParetoEfficientError",
    "ProjectionResult",
    "ReferenceSetResult",
    "build_madd_program",
    "classify_all",
    "default_big_m",
    "efficient_set",
    "extreme_efficient_set",
    "is_pareto_efficient",
    "solve_additive",
    "solve_madd",
    "solve_maximal_frs",
    "solve_mcrs",
    "support_set",
]

BIG_M_FACTOR = 1e5
# A lambda or deficit this close to its big-M switch bound means M is binding.
_SATURATION = 1e-3


class BigMSaturationError(SolverError):
    """The big-M constant is too small for the data; results would be distorted."""


class NotParetoEfficientError(ValueError):
    """A point handed to the reference-set LP is not on the Pareto-efficient frontier."""


class EfficiencyStatus(str, enum.Enum):
    EXTREME_EFFICIENT = "extreme_efficient"
    EFFICIENT_NONEXTREME = "efficient_nonextreme"
    INEFFICIENT = "inefficient"

    @property
    def efficient(self) -> bool:
        return self is not EfficiencyStatus.INEFFICIENT


class Mode(str, enum.Enum):
    CLOSEST = "closest"
    FURTHEST = "furthest"


def _ro(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """``u.y - v.x = 0`` through the origin; input weights ``v``, output weights ``u``."""

    v: np.ndarray
    u: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", _ro(self.v))
        object.__setattr__(self, "u", _ro(self.u))

    def value(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(self.u @ y - self.v @ x)

    def values(self, ds: DMUDataset) -> np.ndarray:
        """``u.y_j - v.x_j`` for every DMU; nonpositive when the hyperplane supports the data."""
        return self.u @ ds.outputs - self.v @ ds.inputs

    def scale(self, ds: DMUDataset) -> float:
        return float(max(1.0, np.max(self.u @ ds.outputs + self.v @ ds.inputs)))


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    mode: Mode
    dmu: int
    x: np.ndarray
    y: np.ndarray
    s_minus: np.ndarray
    s_plus: np.ndarray
    lambdas: Mapping[int, float]
    objective: float
    deficits: Mapping[int, float] | None = None
    hyperplane: Hyperplane | None = None
    scale: float = 1.0
    """Magnitude used to make deficit comparisons relative."""

    def __post_init__(self) -> None:
        for name in ("x", "y", "s_minus", "s_plus"):
            object.__setattr__(self, name, _ro(getattr(self, name)))

    @property
    def point(self) -> tuple[np.ndarray, np.ndarray]:
        return self.x, self.y

    def reference(self, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> frozenset[int]:
        """DMUs with a positive intensity weight in this particular solution."""
        return _positive(self.lambdas, tol)


@dataclass(frozen=True, eq=False)
class ReferenceSetResult:
    projection: ProjectionResult
    candidates: tuple[int, ...]
    members: frozenset[int]
    mu: Mapping[int, float]
    t: Mapping[int, float]
    eta: float
    hyperplane: Hyperplane


def _positive(weights: Mapping[int, float], tol: ToleranceConfig) -> frozenset[int]:
    if not weights:
        return frozenset()
    cut = tol.membership * max(1.0, max(weights.values()))
    return frozenset(j for j, w in weights.items() if w > cut)


def _zero_cut(tol: ToleranceConfig, *vectors: np.ndarray) -> float:
    return tol.zero * max(1.0, *(float(np.max(np.abs(v), initial=0.0)) for v in vectors))


def _additive_program(
    X: np.ndarray, Y: np.ndarray, x: np.ndarray, y: np.ndarray, sense: Sense
) -> LinearProgram:
    """Variables ``[lambda (k), s- (m), s+ (s)]``; objective is the total slack."""
    m, k = X.shape
    s = Y.shape[0]
    A = np.zeros((m + s, k + m + s))
    A[:m, :k] = X
    A[:m, k : k + m] = np.eye(m)
    A[m:, :k] = Y
    A[m:, k + m :] = -np.eye(s)
    c = np.concatenate([np.zeros(k), np.ones(m + s)])
    return LinearProgram(c, A, (Relation.EQ,) * (m + s), np.concatenate([x, y]), None, None, sense)


def classify_all(ds: DMUDataset, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> dict[int, EfficiencyStatus]:
    """Efficiency status of every DMU.

    A DMU is efficient when its additive-model optimum is zero. An efficient DMU
    is extreme unless a nonnegative combination of the other efficient DMUs
    reproduces it exactly. Among DMUs on a common ray, only the first in dataset
    order is treated as extreme.
    """
    X, Y = ds.inputs, ds.outputs
    efficient = []
    for o in range(ds.n):
        x, y = ds.column(o)
        sol = solve_lp(_additive_program(X, Y, x, y, Sense.MAXIMIZE), tol)
        if sol.status is not Status.OPTIMAL:
            raise SolverError(f"additive model for DMU {ds.names[o]!r} returned {sol.status.value}")
        if sol.objective <= _zero_cut(tol, x, y):
            efficient.append(o)

    Z = np.vstack([X, Y])
    unit = Z / np.linalg.norm(Z, axis=0)
    status = {j: EfficiencyStatus.INEFFICIENT for j in range(ds.n)}
    for o in efficient:
        others = [
            j for j in efficient
            if j != o and not (j > o and np.allclose(unit[:, j], unit[:, o], rtol=0.0, atol=1e-9))
        ]
        x, y = ds.column(o)
        sol = solve_lp(_additive_program(X[:, others], Y[:, others], x, y, Sense.MAXIMIZE), tol)
        representable = sol.status is Status.OPTIMAL and sol.objective <= _zero_cut(tol, x, y)
        status[o] = EfficiencyStatus.EFFICIENT_NONEXTREME if representable else EfficiencyStatus.EXTREME_EFFICIENT
    return status


def efficient_set(statuses: Mapping[int, EfficiencyStatus]) -> tuple[int, ...]:
    return tuple(sorted(j for j, st in statuses.items() if st.efficient))


def extreme_efficient_set(statuses: Mapping[int, EfficiencyStatus]) -> tuple[int, ...]:
    return tuple(sorted(j for j, st in statuses.items() if st is EfficiencyStatus.EXTREME_EFFICIENT))


def _check_index(ds: DMUDataset, o: int) -> None:
    if not 0 <= o < ds.n:
        raise IndexError(f"DMU index {o} out of range for {ds.n} DMUs")


def _candidates(ds: DMUDataset, candidates: Iterable[int] | None, fallback) -> tuple[int, ...]:
    if candidates is None:
        return tuple(fallback())
    out = tuple(sorted({int(j) for j in candidates}))
    for j in out:
        _check_index(ds, j)
    return out


def solve_additive(
    ds: DMUDataset,
    o: int,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    candidates: Iterable[int] | None = None,
) -> ProjectionResult:
    """Furthest projection: maximize total slack over the CRS technology."""
    _check_index(ds, o)
    cands = _candidates(ds, candidates, lambda: range(ds.n))
    x, y = ds.column(o)
    k = len(cands)
    sol = solve_lp(_additive_program(ds.inputs[:, cands], ds.outputs[:, cands], x, y, Sense.MAXIMIZE), tol)
    if sol.status is not Status.OPTIMAL:
        raise SolverError(f"additive model for DMU {ds.names[o]!r} returned {sol.status.value}")
    lam = np.maximum(sol.primal[:k], 0.0)
    sm = np.maximum(sol.primal[k : k + ds.m], 0.0)
    sp = np.maximum(sol.primal[k + ds.m :], 0.0)
    return ProjectionResult(
        mode=Mode.FURTHEST,
        dmu=o,
        x=x - sm,
        y=y + sp,
        s_minus=sm,
        s_plus=sp,
        lambdas={j: float(v) for j, v in zip(cands, lam)},
        objective=float(sm.sum() + sp.sum()),
    )


def default_big_m(ds: DMUDataset) -> float:
    return BIG_M_FACTOR * ds.max_abs_value


@dataclass(frozen=True)
class _MaddLayout:
    k: int
    m: int
    s: int

    @property
    def lam(self) -> slice:
        return slice(0, self.k)

    @property
    def s_minus(self) -> slice:
        return slice(self.k, self.k + self.m)

    @property
    def s_plus(self) -> slice:
        return slice(self.k + self.m, self.k + self.m + self.s)

    @property
    def v(self) -> slice:
        a = self.k + self.m + self.s
        return slice(a, a + self.m)

    @property
    def u(self) -> slice:
        a = self.k + 2 * self.m + self.s
        return slice(a, a + self.s)

    @property
    def d(self) -> slice:
        a = self.k + 2 * (self.m + self.s)
        return slice(a, a + self.k)

    @property
    def b(self) -> slice:
        a = 2 * self.k + 2 * (self.m + self.s)
        return slice(a, a + self.k)

    @property
    def size(self) -> int:
        return 3 * self.k + 2 * (self.m + self.s)


def build_madd_program(
    ds: DMUDataset, o: int, candidates: Iterable[int], big_m: float
) -> tuple[MILPProgram, _MaddLayout]:
    """Closest-target MILP for DMU ``o`` restricted to ``candidates``.

    Variable order: ``lambda, s-, s+, v, u, d, b`` (one ``lambda``/``d``/``b``
    per candidate). ``d_j = v.x_j - u.y_j`` is the candidate's gap below the
    hyperplane; ``b_j = 1`` releases ``d_j`` and pins ``lambda_j`` to zero.
    """
    cands = list(candidates)
    L = _MaddLayout(len(cands), ds.m, ds.s)
    k, m, s = L.k, L.m, L.s
    Xc, Yc = ds.inputs[:, cands], ds.outputs[:, cands]
    x, y = ds.column(o)
    rows, rels, rhs = [], [], []

    def row() -> np.ndarray:
        return np.zeros(L.size)

    for i in range(m):
        a = row()
        a[L.lam] = Xc[i]
        a[L.s_minus.start + i] = 1.0
        rows.append(a), rels.append(Relation.EQ), rhs.append(x[i])
    for r in range(s):
        a = row()
        a[L.lam] = Yc[r]
        a[L.s_plus.start + r] = -1.0
        rows.append(a), rels.append(Relation.EQ), rhs.append(y[r])
    for q in range(k):
        a = row()
        a[L.v] = Xc[:, q]
        a[L.u] = -Yc[:, q]
        a[L.d.start + q] = -1.0
        rows.append(a), rels.append(Relation.EQ), rhs.append(0.0)
    for q in range(k):
        a = row()
        a[L.d.start + q] = 1.0
        a[L.b.start + q] = -big_m
        rows.append(a), rels.append(Relation.LE), rhs.append(0.0)
    for q in range(k):
        a = row()
        a[L.lam.start + q] = 1.0
        a[L.b.start + q] = big_m
        rows.append(a), rels.append(Relation.LE), rhs.append(big_m)

    c = row()
    c[L.s_minus] = 1.0
    c[L.s_plus] = 1.0
    lower = row()
    lower[L.v] = 1.0
    lower[L.u] = 1.0
    upper = np.full(L.size, np.inf)
    upper[L.b] = 1.0
    lp = LinearProgram(c, np.array(rows).reshape(len(rows), L.size), tuple(rels), rhs, lower, upper, Sense.MINIMIZE)
    return MILPProgram(lp, tuple(range(L.b.start, L.b.stop))), L


def solve_madd(
    ds: DMUDataset,
    o: int,
    candidates: Iterable[int] | None = None,
    big_m: float | None = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    node_limit: int = DEFAULT_NODE_LIMIT,
    statuses: Mapping[int, EfficiencyStatus] | None = None,
) -> ProjectionResult:
    """Closest Pareto-efficient projection of DMU ``o``.

    ``candidates`` defaults to all efficient DMUs. ``big_m`` defaults to
    :func:`default_big_m`; if the optimum presses against an ``M`` bound, or the
    program is infeasible, :class:`BigMSaturationError` is raised.
    """
    _check_index(ds, o)
    if statuses is None and candidates is None:
        statuses = classify_all(ds, tol)
    cands = _candidates(ds, candidates, lambda: efficient_set(statuses))
    if not cands:
        raise ValueError("candidate set is empty")
    M = default_big_m(ds) if big_m is None else float(big_m)
    if not M > 0:
        raise ValueError("big-M must be positive")

    program, L = build_madd_program(ds, o, cands, M)
    sol = solve_milp(program, tol, node_limit)
    if sol.status is not Status.OPTIMAL:
        raise BigMSaturationError(
            f"closest-target MILP infeasible for DMU {ds.names[o]!r} with M={M:g}; M is too small for the data"
        )
    z = sol.primal
    lam, d, b = z[L.lam], z[L.d], np.round(z[L.b])
    limit = (1.0 - _SATURATION) * M
    for q, j in enumerate(cands):
        if (b[q] == 0 and lam[q] >= limit) or (b[q] == 1 and d[q] >= limit):
            what = "lambda" if b[q] == 0 else "deficit"
            raise BigMSaturationError(
                f"big-M saturated for DMU {ds.names[o]!r}: {what} of {ds.names[j]!r} is within "
                f"{_SATURATION:g}*M of M={M:g}; increase M"
            )

    x, y = ds.column(o)
    sm = np.maximum(z[L.s_minus], 0.0)
    sp = np.maximum(z[L.s_plus], 0.0)
    h = Hyperplane(v=z[L.v], u=z[L.u])
    gaps = -h.values(ds)
    return ProjectionResult(
        mode=Mode.CLOSEST,
        dmu=o,
        x=x - sm,
        y=y + sp,
        s_minus=sm,
        s_plus=sp,
        lambdas={j: float(max(lam[q], 0.0)) for q, j in enumerate(cands)},
        objective=float(sm.sum() + sp.sum()),
        deficits={j: float(max(gaps[j], 0.0)) for j in cands},
        hyperplane=h,
        scale=h.scale(ds),
    )


def support_set(
    proj: ProjectionResult,
    candidates: Iterable[int] | None = None,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
) -> frozenset[int]:
    """Candidates whose deficit below the projection's hyperplane is zero."""
    if proj.deficits is None:
        raise ValueError("projection carries no deficits; use a closest projection")
    allowed = None if candidates is None else set(candidates)
    cut = tol.support * proj.scale
    return frozenset(j for j, d in proj.deficits.items() if d <= cut and (allowed is None or j in allowed))


def projection_from_hyperplane(
    ds: DMUDataset,
    o: int,
    point: tuple[Iterable[float], Iterable[float]],
    hyperplane: Hyperplane,
    candidates: Iterable[int],
) -> ProjectionResult:
    """A closest-mode projection assembled from a known point and hyperplane (no solve)."""
    x0, y0 = ds.column(o)
    xp, yp = np.asarray(point[0], dtype=float), np.asarray(point[1], dtype=float)
    sm, sp = x0 - xp, yp - y0
    gaps = -hyperplane.values(ds)
    return ProjectionResult(
        mode=Mode.CLOSEST,
        dmu=o,
        x=xp,
        y=yp,
        s_minus=sm,
        s_plus=sp,
        lambdas={},
        objective=float(sm.sum() + sp.sum()),
        deficits={j: float(max(gaps[j], 0.0)) for j in candidates},
        hyperplane=hyperplane,
        scale=hyperplane.scale(ds),
    )


def is_pareto_efficient(
    ds: DMUDataset,
    point: tuple[Iterable[float], Iterable[float]],
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    statuses: Mapping[int, EfficiencyStatus] | None = None,
) -> bool:
    """True iff the point lies in the technology with zero additive slack against the efficient DMUs."""
    x, y = (np.asarray(p, dtype=float) for p in point)
    if statuses is None:
        statuses = classify_all(ds, tol)
    eff = list(efficient_set(statuses))
    sol = solve_lp(_additive_program(ds.inputs[:, eff], ds.outputs[:, eff], x, y, Sense.MAXIMIZE), tol)
    if sol.status is Status.INFEASIBLE:
        return False
    if sol.status is not Status.OPTIMAL:
        raise SolverError(f"Pareto check returned {sol.status.value}")
    return sol.objective <= _zero_cut(tol, x, y)


def _reference_lp(
    ds: DMUDataset,
    cands: tuple[int, ...],
    x0: np.ndarray,
    y0: np.ndarray,
    total_slack: float | None,
) -> tuple[LinearProgram, dict[str, slice]]:
    """Strict-complementarity LP shared by :func:`solve_mcrs` and :func:`solve_maximal_frs`.

    With ``total_slack=None`` the point ``(x0, y0)`` must be represented
    exactly and lie on the hyperplane. Otherwise slack variables are added,
    their sum is pinned to ``total_slack`` and the hyperplane's value at the
    point is pinned to ``-total_slack`` (primal and dual optimality of the
    additive model).
    """
    k, m, s, n = len(cands), ds.m, ds.s, ds.n
    with_slack = total_slack is not None
    blocks: dict[str, slice] = {}
    pos = 0
    for name, size in (
        ("mu", k),
        ("s_minus", m if with_slack else 0),
        ("s_plus", s if with_slack else 0),
        ("t", k),
        ("v", m),
        ("u", s),
        ("eta", 1),
    ):
        blocks[name] = slice(pos, pos + size)
        pos += size
    size = pos
    Xc, Yc = ds.inputs[:, cands], ds.outputs[:, cands]
    rows, rels, rhs = [], [], []

    def add(a: np.ndarray, rel: Relation, b: float) -> None:
        rows.append(a)
        rels.append(rel)
        rhs.append(b)

    for i in range(m):
        a = np.zeros(size)
        a[blocks["mu"]] = Xc[i]
        if with_slack:
            a[blocks["s_minus"].start + i] = 1.0
        add(a, Relation.EQ, x0[i])
    for r in range(s):
        a = np.zeros(size)
        a[blocks["mu"]] = Yc[r]
        if with_slack:
            a[blocks["s_plus"].start + r] = -1.0
        add(a, Relation.EQ, y0[r])
    if with_slack:
        a = np.zeros(size)
        a[blocks["s_minus"]] = 1.0
        a[blocks["s_plus"]] = 1.0
        add(a, Relation.EQ, total_slack)
    a = np.zeros(size)
    a[blocks["u"]] = y0
    a[blocks["v"]] = -x0
    add(a, Relation.EQ, -total_slack if with_slack else 0.0)
    in_cands = set(cands)
    for q, j in enumerate(cands):
        a = np.zeros(size)
        a[blocks["u"]] = ds.outputs[:, j]
        a[blocks["v"]] = -ds.inputs[:, j]
        a[blocks["t"].start + q] = 1.0
        add(a, Relation.EQ, 0.0)
    # Keep the hyperplane supporting for every DMU, not only the candidates.
    for j in range(n):
        if j not in in_cands:
            a = np.zeros(size)
            a[blocks["u"]] = ds.outputs[:, j]
            a[blocks["v"]] = -ds.inputs[:, j]
            add(a, Relation.LE, 0.0)
    for q in range(k):
        a = np.zeros(size)
        a[blocks["mu"].start + q] = 1.0
        a[blocks["t"].start + q] = 1.0
        a[blocks["eta"]] = -1.0
        add(a, Relation.GE, 0.0)

    c = np.zeros(size)
    c[blocks["eta"]] = 1.0
    lower = np.zeros(size)
    lower[blocks["v"]] = 1.0
    lower[blocks["u"]] = 1.0
    lp = LinearProgram(c, np.array(rows).reshape(len(rows), size), tuple(rels), rhs, lower, None, Sense.MAXIMIZE)
    return lp, blocks


def _solve_reference(
    ds: DMUDataset,
    proj: ProjectionResult,
    cands: tuple[int, ...],
    total_slack: float | None,
    tol: ToleranceConfig,
) -> tuple[ReferenceSetResult, np.ndarray, dict[str, slice]]:
    x0, y0 = ds.column(proj.dmu) if total_slack is not None else proj.point
    lp, B = _reference_lp(ds, cands, x0, y0, total_slack)
    sol = solve_lp(lp, tol)
    name = ds.names[proj.dmu]
    if sol.status is Status.INFEASIBLE:
        raise SolverError(f"reference-set LP infeasible for DMU {name!r}: point not representable by candidates")
    if sol.status is not Status.OPTIMAL:
        raise SolverError(f"reference-set LP for DMU {name!r} returned {sol.status.value}")
    z = sol.primal
    eta = float(z[B["eta"]][0])
    if not eta > 0:
        raise SolverError(f"reference-set LP for DMU {name!r} has non-positive optimum eta={eta:g}")
    mu = {j: float(max(v, 0.0)) for j, v in zip(cands, z[B["mu"]])}
    t = {j: float(max(v, 0.0)) for j, v in zip(cands, z[B["t"]])}
    h = Hyperplane(v=z[B["v"]], u=z[B["u"]])
    res = ReferenceSetResult(
        projection=proj,
        candidates=cands,
        members=_positive(mu, tol),
        mu=mu,
        t=t,
        eta=eta,
        hyperplane=h,
    )
    return res, z, B


def solve_mcrs(
    ds: DMUDataset,
    proj: ProjectionResult,
    candidates: Iterable[int] | None = None,
    all_efficient: bool = False,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    statuses: Mapping[int, EfficiencyStatus] | None = None,
) -> ReferenceSetResult:
    """Maximal reference set of the fixed point ``proj.point``.

    Candidates default to :func:`support_set` of ``proj`` (or to every
    efficient DMU with ``all_efficient=True``, or when ``proj`` has no
    hyperplane). Raises :class:`NotParetoEfficientError` if the point is not
    Pareto-efficient.
    """
    if statuses is None:
        statuses = classify_all(ds, tol)
    if not is_pareto_efficient(ds, proj.point, tol, statuses):
        raise NotParetoEfficientError(f"projection of DMU {ds.names[proj.dmu]!r} is not Pareto-efficient")
    if candidates is not None:
        cands = _candidates(ds, candidates, tuple)
    elif all_efficient or proj.deficits is None:
        cands = efficient_set(statuses)
    else:
        cands = tuple(sorted(support_set(proj, tol=tol)))
    res, _, _ = _solve_reference(ds, proj, cands, None, tol)
    return res


def solve_maximal_frs(
    ds: DMUDataset,
    o: int,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    statuses: Mapping[int, EfficiencyStatus] | None = None,
    furthest: ProjectionResult | None = None,
) -> ReferenceSetResult:
    """Every efficient DMU carrying positive weight in some optimal solution of the additive model.

    The returned ``projection`` is the additive-optimal point represented by
    the strictly complementary weights, which in general is not a vertex.
    """
    _check_index(ds, o)
    if statuses is None:
        statuses = classify_all(ds, tol)
    if furthest is None:
        furthest = solve_additive(ds, o, tol)
    cands = efficient_set(statuses)
    res, z, B = _solve_reference(ds, furthest, cands, furthest.objective, tol)
    x, y = ds.column(o)
    sm = np.maximum(z[B["s_minus"]], 0.0)
    sp = np.maximum(z[B["s_plus"]], 0.0)
    point = ProjectionResult(
        mode=Mode.FURTHEST,
        dmu=o,
        x=x - sm,
        y=y + sp,
        s_minus=sm,
        s_plus=sp,
        lambdas=res.mu,
        objective=float(sm.sum() + sp.sum()),
        hyperplane=res.hyperplane,
        scale=res.hyperplane.scale(ds),
    )
    return ReferenceSetResult(point, res.candidates, res.members, res.mu, res.t, res.eta, res.hyperplane)
