"""Exact fair division of mixed goods and bads with as little sharing as possible."""

from .core import (
    Allocation,
    FairnessKind,
    FairnessSpec,
    Instance,
    Objective,
    ObjectClass,
    SharingStats,
    as_fraction,
    classify_object,
    degeneracy,
    is_fair,
    sharing_stats,
    utilities,
    utility,
)
from .enumeration import (
    DegeneracyBudgetError,
    FpoGraphSet,
    enumerate_fpo_graphs,
    enumerate_two_agents,
    extend_with_agent,
)
from .graph import (
    ConsumptionGraph,
    Cycle,
    DirectedConsumptionGraph,
    NotParetoOptimalError,
    WeightCertificate,
    certificate_valid,
    dcg_of,
    find_violating_cycle,
    is_fpo,
    is_fpo_graph,
    is_nonmalicious,
    po_weights,
    ucg_of,
)
from .improve import eliminate_cycles, prop_fpo_simple, repair_malicious
from .lp import (
    Constraint,
    LinearProgram,
    Relation,
    basic_feasible_point,
    feasible_point,
)
from .oracle import (
    BudgetExceededError,
    brute_fpo_graphs,
    brute_min_objective,
    domination_check,
)
from .solver import (
    AllocationReport,
    FastPathError,
    NoFairAllocationError,
    SolveResult,
    check_allocation,
    solve_consensus,
    solve_min_sharing,
    solve_two_agents_fast,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "AllocationReport",
    "BudgetExceededError",
    "Constraint",
    "ConsumptionGraph",
    "Cycle",
    "DegeneracyBudgetError",
    "DirectedConsumptionGraph",
    "FairnessKind",
    "FairnessSpec",
    "FastPathError",
    "FpoGraphSet",
    "Instance",
    "LinearProgram",
    "NoFairAllocationError",
    "NotParetoOptimalError",
    "ObjectClass",
    "Objective",
    "Relation",
    "SharingStats",
    "SolveResult",
    "WeightCertificate",
    "as_fraction",
    "basic_feasible_point",
    "brute_fpo_graphs",
    "brute_min_objective",
    "certificate_valid",
    "check_allocation",
    "classify_object",
    "dcg_of",
    "degeneracy",
    "domination_check",
    "eliminate_cycles",
    "enumerate_fpo_graphs",
    "enumerate_two_agents",
    "extend_with_agent",
    "feasible_point",
    "find_violating_cycle",
    "is_fair",
    "is_fpo",
    "is_fpo_graph",
    "is_nonmalicious",
    "po_weights",
    "prop_fpo_simple",
    "repair_malicious",
    "sharing_stats",
    "solve_consensus",
    "solve_min_sharing",
    "solve_two_agents_fast",
    "ucg_of",
    "utilities",
    "utility",
]
