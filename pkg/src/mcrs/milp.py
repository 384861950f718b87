"""Depth-first branch and bound over binary variables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .lp import (
    DEFAULT_TOLERANCES,
    LinearProgram,
    Sense,
    SolverError,
    Status,
    ToleranceConfig,
    solve_lp,
)

__all__ = ["MILPProgram", "MILPSolution", "NodeLimitError", "solve_milp", "DEFAULT_NODE_LIMIT"]

DEFAULT_NODE_LIMIT = 100_000


@dataclass(frozen=True, eq=False)
class MILPProgram:
    base: LinearProgram
    binary_vars: tuple[int, ...]

    def __post_init__(self) -> None:
        bins = tuple(sorted({int(j) for j in self.binary_vars}))
        n = self.base.n_vars
        for j in bins:
            if not 0 <= j < n:
                raise ValueError(f"binary variable index {j} out of range")
            if self.base.lower[j] != 0.0 or self.base.upper[j] != 1.0:
                raise ValueError(f"binary variable {j} must have bounds [0, 1]")
        object.__setattr__(self, "binary_vars", bins)

    @classmethod
    def of(cls, base: LinearProgram, binary_vars: Iterable[int]) -> "MILPProgram":
        return cls(base, tuple(binary_vars))


@dataclass(frozen=True, eq=False)
class MILPSolution:
    status: Status
    objective: float
    primal: np.ndarray
    node_count: int
    bound: float
    """Objective of the root LP relaxation."""
    proven: bool = True


class NodeLimitError(SolverError):
    """The search exhausted its node budget; ``incumbent`` is the best point found, unproven."""

    def __init__(self, message: str, incumbent: MILPSolution | None):
        super().__init__(message)
        self.incumbent = incumbent


def solve_milp(
    p: MILPProgram,
    tol: ToleranceConfig = DEFAULT_TOLERANCES,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> MILPSolution:
    """Solve a mixed-binary program to proven optimality.

    Nodes are explored depth first, branching on the most fractional binary
    and visiting the ``b = 1`` child before ``b = 0``. Every incumbent is
    obtained by re-solving the LP with all binaries fixed, so reported
    binaries are exact and the reported objective is that of the fixed LP.
    """
    base = p.base
    bins = np.array(p.binary_vars, dtype=int)
    sign = 1.0 if base.sense is Sense.MINIMIZE else -1.0

    best = math.inf  # in minimization terms
    incumbent: MILPSolution | None = None
    root_bound = math.nan
    nodes = 0
    stack: list[tuple[np.ndarray, np.ndarray]] = [(base.lower.copy(), base.upper.copy())]

    def fixed_solve(lo: np.ndarray, up: np.ndarray, values: np.ndarray):
        lo2, up2 = lo.copy(), up.copy()
        lo2[bins] = values
        up2[bins] = values
        return solve_lp(base.with_bounds(lo2, up2), tol)

    while stack:
        lo, up = stack.pop()
        nodes += 1
        if nodes > node_limit:
            if incumbent is not None:
                incumbent = MILPSolution(
                    Status.OPTIMAL, incumbent.objective, incumbent.primal, nodes - 1, root_bound, proven=False
                )
            raise NodeLimitError(f"branch and bound exceeded {node_limit} nodes", incumbent)
        relax = solve_lp(base.with_bounds(lo, up), tol)
        if relax.status is Status.INFEASIBLE:
            continue
        if relax.status is Status.UNBOUNDED:
            raise SolverError("LP relaxation is unbounded")
        if nodes == 1:
            root_bound = relax.objective
        value = sign * relax.objective
        if value >= best - 1e-9 * max(1.0, abs(best)):
            continue

        vals = relax.primal[bins] if bins.size else np.zeros(0)
        frac = np.abs(vals - np.round(vals))
        if not bins.size or frac.max() <= tol.integrality:
            fixed = fixed_solve(lo, up, np.round(vals))
            if fixed.status is Status.OPTIMAL:
                fval = sign * fixed.objective
                if fval < best:
                    best = fval
                    incumbent = MILPSolution(Status.OPTIMAL, fixed.objective, fixed.primal, nodes, root_bound)
                if fval <= value + 1e-9 * max(1.0, abs(value)) or not np.any(frac > 0):
                    continue
            elif not np.any(frac > 0):
                raise SolverError("relaxation is integral but the fixed LP is infeasible; numerically unstable")
            # Rounding within tolerance was not exact (big-M coefficients): keep branching.

        j = int(bins[np.argmax(frac)])
        lo0, up0 = lo.copy(), up.copy()
        up0[j] = 0.0
        lo1, up1 = lo.copy(), up.copy()
        lo1[j] = 1.0
        stack.append((lo0, up0))
        stack.append((lo1, up1))

    if incumbent is None:
        return MILPSolution(Status.INFEASIBLE, math.nan, np.full(base.n_vars, np.nan), nodes, root_bound)
    return MILPSolution(Status.OPTIMAL, incumbent.objective, incumbent.primal, nodes, root_bound)
