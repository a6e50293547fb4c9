"""Coverage-aware LTE uplink resource-block scheduling for camera networks.

Allocates the minimum number of uplink resource blocks to a subset of
surveillance cameras so that every surveilled target stays covered, under
single-carrier contiguity, robust-rate and per-slot capacity constraints.
"""

from .exact import DEFAULT_NODE_BUDGET, SearchBudgetExceeded, exact_solve
from .harness import (
    SweepCell,
    SweepResult,
    SweepSpec,
    greedy_based_reference,
    run_sweep,
    schedule_from_document,
    schedule_to_document,
    sweep_spec_from_document,
)
from .model import (
    CameraNode,
    CandidateAllocation,
    Directional,
    FeasibilityReport,
    FrameGrid,
    Omnidirectional,
    Scenario,
    Schedule,
    TargetObject,
    candidate_runs,
    enumerate_candidates,
    robust_rate,
    verify_schedule,
)
from .scenario import (
    ChannelParams,
    GeometrySpec,
    InvalidConfigError,
    ScenarioConfig,
    ScenarioFormatError,
    compute_coverage,
    config_from_document,
    config_to_document,
    derive_rates,
    generate_scenario,
    load_scenario,
    save_scenario,
)
from .solvers import (
    BoundParams,
    CandidateTable,
    CoverageState,
    Diagnostics,
    GreedyPhase,
    GreedyStep,
    RelocationStep,
    SolveStatus,
    SolverResult,
    TrafficItem,
    baseline_schedule,
    bound_params,
    greedy_weighted_set_cover,
    harmonic,
    joint_schedule,
    m_mramc,
    mramc,
    mramc_greedy,
    mramc_relocate,
    traffic_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "CameraNode",
    "CandidateAllocation",
    "CandidateTable",
    "ChannelParams",
    "CoverageState",
    "DEFAULT_NODE_BUDGET",
    "Diagnostics",
    "Directional",
    "FeasibilityReport",
    "FrameGrid",
    "GeometrySpec",
    "GreedyPhase",
    "GreedyStep",
    "InvalidConfigError",
    "Omnidirectional",
    "RelocationStep",
    "Scenario",
    "ScenarioConfig",
    "ScenarioFormatError",
    "Schedule",
    "SearchBudgetExceeded",
    "SolveStatus",
    "SolverResult",
    "SweepCell",
    "SweepResult",
    "SweepSpec",
    "TargetObject",
    "TrafficItem",
    "baseline_schedule",
    "bound_params",
    "candidate_runs",
    "compute_coverage",
    "config_from_document",
    "config_to_document",
    "derive_rates",
    "enumerate_candidates",
    "exact_solve",
    "generate_scenario",
    "greedy_based_reference",
    "greedy_weighted_set_cover",
    "harmonic",
    "joint_schedule",
    "load_scenario",
    "m_mramc",
    "mramc",
    "mramc_greedy",
    "mramc_relocate",
    "robust_rate",
    "run_sweep",
    "save_scenario",
    "schedule_from_document",
    "schedule_to_document",
    "sweep_spec_from_document",
    "traffic_scenario",
    "verify_schedule",
]
