"""Per-DMU two-step analysis (closest target, then its maximal reference set) and batch reports."""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

import numpy as np

from .dataset import DMUDataset
from .fixtures import PUBLISHED_DMU7_CLOSEST, PUBLISHED_DMU7_OBJECTIVE, is_table1
from .lp import DEFAULT_TOLERANCES, SolverError, ToleranceConfig
from .milp import DEFAULT_NODE_LIMIT
from .models import (
    EfficiencyStatus,
    NotParetoEfficientError,
    ProjectionResult,
    ReferenceSetResult,
    classify_all,
    default_big_m,
    efficient_set,
    extreme_efficient_set,
    solve_additive,
    solve_madd,
    solve_maximal_frs,
    solve_mcrs,
    support_set,
)

__all__ = [
    "AnalysisConfig",
    "AnalysisMode",
    "AnalysisRecord",
    "AnalysisReport",
    "CandidatePolicy",
    "analyze_all",
    "analyze_dmu",
]


class AnalysisMode(str, enum.Enum):
    CLOSEST = "closest"
    FURTHEST = "furthest"
    BOTH = "both"


class CandidatePolicy(str, enum.Enum):
    SUPPORT = "support"
    ALL_EFFICIENT = "all-efficient"


@dataclass(frozen=True)
class AnalysisConfig:
    mode: AnalysisMode = AnalysisMode.BOTH
    big_m: float | None = None
    """``None`` means 1e5 times the largest data value."""
    candidates: CandidatePolicy = CandidatePolicy.SUPPORT
    extreme_only: bool = False
    """Restrict the closest-target MILP to extreme-efficient DMUs instead of all efficient ones."""
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES
    node_limit: int = DEFAULT_NODE_LIMIT
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", AnalysisMode(self.mode))
        object.__setattr__(self, "candidates", CandidatePolicy(self.candidates))

    def to_dict(self, ds: DMUDataset) -> dict[str, Any]:
        tol = self.tolerances
        return {
            "mode": self.mode.value,
            "big_m": "auto" if self.big_m is None else float(self.big_m),
            "big_m_value": float(default_big_m(ds) if self.big_m is None else self.big_m),
            "candidates": self.candidates.value,
            "madd_candidates": "extreme-efficient" if self.extreme_only else "efficient",
            "node_limit": self.node_limit,
            "tolerances": {
                "pivot": tol.pivot,
                "feasibility": tol.feasibility,
                "optimality": tol.optimality,
                "integrality": tol.integrality,
                "zero": tol.zero,
                "membership": tol.membership,
                "support": tol.support,
                "max_iterations": tol.max_iterations,
            },
        }


@dataclass(frozen=True, eq=False)
class AnalysisRecord:
    dmu: int
    name: str
    status: EfficiencyStatus
    furthest: ProjectionResult | None = None
    maximal_frs: ReferenceSetResult | None = None
    closest: ProjectionResult | None = None
    support: frozenset[int] | None = None
    mcrs: ReferenceSetResult | None = None
    error: str | None = None
    stage: str | None = None

    def to_dict(self, ds: DMUDataset) -> dict[str, Any]:
        names = ds.names
        out: dict[str, Any] = {"name": self.name, "index": self.dmu, "status": self.status.value}
        if self.furthest is not None:
            f: dict[str, Any] = {"point": _flat(self.furthest), "objective": self.furthest.objective}
            if self.maximal_frs is not None:
                f["maximal_frs"] = _names(self.maximal_frs.members, names)
                f["frs_point"] = _flat(self.maximal_frs.projection)
            out["furthest"] = f
        else:
            out["furthest"] = None
        if self.closest is not None:
            c: dict[str, Any] = {"point": _flat(self.closest), "objective": self.closest.objective}
            if self.support is not None:
                c["support_set"] = _names(self.support, names)
            if self.mcrs is not None:
                c["mcrs"] = _names(self.mcrs.members, names)
                c["mu"] = {names[j]: w for j, w in sorted(self.mcrs.mu.items())}
                c["eta"] = self.mcrs.eta
            h = self.mcrs.hyperplane if self.mcrs is not None else self.closest.hyperplane
            c["hyperplane"] = {"u": _floats(h.u), "v": _floats(h.v)} if h is not None else None
            out["closest"] = c
        else:
            out["closest"] = None
        if self.error is not None:
            out["error"] = self.error
            out["stage"] = self.stage
        return out


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    dataset: DMUDataset
    config: AnalysisConfig
    records: tuple[AnalysisRecord, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def digest(self) -> str:
        return self.dataset.digest()

    @property
    def failed(self) -> bool:
        return any(r.error is not None for r in self.records)

    def to_dict(self) -> dict[str, Any]:
        ds = self.dataset
        return {
            "dataset": {
                "digest": self.digest,
                "n": ds.n,
                "inputs": list(ds.input_labels),
                "outputs": list(ds.output_labels),
            },
            "config": self.config.to_dict(ds),
            "dmus": [r.to_dict(ds) for r in self.records],
            "notes": list(self.notes),
        }


def _floats(a: Iterable[float]) -> list[float]:
    return [float(v) for v in a]


def _flat(p: ProjectionResult) -> list[float]:
    return _floats(np.concatenate([p.x, p.y]))


def _names(idx: Iterable[int], names: tuple[str, ...]) -> list[str]:
    return [names[j] for j in sorted(idx)]


def analyze_dmu(
    ds: DMUDataset,
    o: int,
    config: AnalysisConfig = AnalysisConfig(),
    statuses: Mapping[int, EfficiencyStatus] | None = None,
) -> AnalysisRecord:
    """Furthest projection with its maximal set, then closest projection, support set and MCRS.

    Solver failures are captured in the record (``error``/``stage``) rather than raised.
    """
    tol = config.tolerances
    if statuses is None:
        statuses = classify_all(ds, tol)
    values: dict[str, Any] = {}
    stage = "furthest"
    try:
        if config.mode in (AnalysisMode.FURTHEST, AnalysisMode.BOTH):
            values["furthest"] = solve_additive(ds, o, tol)
            stage = "maximal_frs"
            values["maximal_frs"] = solve_maximal_frs(ds, o, tol, statuses, values["furthest"])
        if config.mode in (AnalysisMode.CLOSEST, AnalysisMode.BOTH):
            stage = "closest"
            cands = extreme_efficient_set(statuses) if config.extreme_only else efficient_set(statuses)
            proj = solve_madd(ds, o, cands, config.big_m, tol, config.node_limit, statuses)
            values["closest"] = proj
            values["support"] = support_set(proj, tol=tol)
            stage = "mcrs"
            values["mcrs"] = solve_mcrs(
                ds, proj, all_efficient=config.candidates is CandidatePolicy.ALL_EFFICIENT, tol=tol, statuses=statuses
            )
    except (SolverError, NotParetoEfficientError) as exc:
        return AnalysisRecord(o, ds.names[o], statuses[o], **values, error=str(exc), stage=stage)
    return AnalysisRecord(o, ds.names[o], statuses[o], **values)


def _table1_notes(ds: DMUDataset, records: Iterable[AnalysisRecord]) -> tuple[str, ...]:
    if not is_table1(ds):
        return ()
    notes = []
    for r in records:
        if r.name == "DMU7" and r.closest is not None:
            (x1, x2), (y,) = PUBLISHED_DMU7_CLOSEST
            p = r.closest
            notes.append(
                f"DMU7: closest projection ({p.x[0]:.4f},{p.x[1]:.4f},{p.y[0]:.4f}) with total slack "
                f"{p.objective:.4f} differs from the published row ({x1:.4f},{x2:.4f},{y:.4f}), whose "
                f"total slack {PUBLISHED_DMU7_OBJECTIVE:.4f} is feasible but not minimal."
            )
    return tuple(notes)


def analyze_all(
    ds: DMUDataset,
    config: AnalysisConfig = AnalysisConfig(),
    dmus: Iterable[int] | None = None,
) -> AnalysisReport:
    """One record per selected DMU, in dataset order."""
    statuses = classify_all(ds, config.tolerances)
    idx = sorted(set(range(ds.n) if dmus is None else dmus))

    def run(o: int) -> AnalysisRecord:
        return analyze_dmu(ds, o, config, statuses)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = tuple(pool.map(run, idx))
    else:
        records = tuple(run(o) for o in idx)
    return AnalysisReport(ds, config, records, _table1_notes(ds, records))
