"""Achievable sum-rate analysis of hierarchical cooperation in dense wireless networks."""

from .hierarchy import (
    FixedPointTrace,
    HierarchyPlan,
    coding_rate_fixed_point,
    lemma1_check,
    local_throughput,
    optimal_stages,
    sum_rate_hier,
    theorem3_reuse,
)
from .link_budget import (
    LinkBudget,
    interference_bound,
    local_rate,
    optimal_snr,
    reuse_factor,
    tin_feasible,
)
from .model import (
    InterferenceModel,
    NetworkConfig,
    ProtocolParams,
    RateReport,
    Scheme,
    db_to_linear,
    dof_limit,
    linear_to_db,
)
from .qmf import (
    QmfBracketError,
    QmfProblem,
    QmfSolution,
    capacity_rmt,
    h_gap,
    qmf_rate,
    sigma_bounds,
)
from .single_stage import (
    SingleStagePlan,
    optimal_cluster_size,
    packet_throughput,
    plan_single_stage,
    sum_rate_single,
)

__all__ = [
    "FixedPointTrace",
    "HierarchyPlan",
    "InterferenceModel",
    "LinkBudget",
    "NetworkConfig",
    "ProtocolParams",
    "QmfBracketError",
    "QmfProblem",
    "QmfSolution",
    "RateReport",
    "Scheme",
    "SingleStagePlan",
    "capacity_rmt",
    "coding_rate_fixed_point",
    "db_to_linear",
    "dof_limit",
    "h_gap",
    "interference_bound",
    "lemma1_check",
    "linear_to_db",
    "local_rate",
    "local_throughput",
    "optimal_cluster_size",
    "optimal_snr",
    "optimal_stages",
    "packet_throughput",
    "plan_single_stage",
    "qmf_rate",
    "reuse_factor",
    "sigma_bounds",
    "sum_rate_hier",
    "sum_rate_single",
    "theorem3_reuse",
    "tin_feasible",
]

__version__ = "0.1.0"
