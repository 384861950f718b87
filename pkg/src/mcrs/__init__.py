"""Closest Pareto-efficient targets and maximal closest reference sets for DEA under CRS."""

from .dataset import DatasetError, DMUDataset, dmu_column, dump_dataset, load_dataset, load_dataset_path
from .lp import LinearProgram, LPSolution, SolverError, Status, ToleranceConfig, solve_lp
from .milp import MILPProgram, MILPSolution, NodeLimitError, solve_milp
from .models import (
    BigMSaturationError,
    EfficiencyStatus,
    Hyperplane,
    NotParetoEfficientError,
    ProjectionResult,
    ReferenceSetResult,
    classify_all,
    is_pareto_efficient,
    solve_additive,
    solve_madd,
    solve_maximal_frs,
    solve_mcrs,
    support_set,
)
from .oracles import oracle_closest, oracle_maximal_set
from .pipeline import AnalysisConfig, AnalysisRecord, AnalysisReport, analyze_all, analyze_dmu

__version__ = "0.1.0"
