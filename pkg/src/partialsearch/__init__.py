"""Sure-success quantum partial search.

Plans the local/global Grover iteration counts and the two correction phases
of the final step so a database block search succeeds with probability one,
and certifies every plan against an independent dense state-vector simulation.
"""

from .fullsim import (
    CertificationRecord,
    FullState,
    certify_plan,
    full_final_step,
    full_global_step,
    full_initial_state,
    full_local_step,
    project_to_subspace,
)
from .geometry import (
    IdealCounts,
    SearchGeometry,
    candidate_counts,
    ideal_counts,
    make_geometry,
)
from .phases import (
    Infeasible,
    IterationPlan,
    PhaseAuxiliaries,
    PhaseSolution,
    PlanFailure,
    auxiliaries,
    condition_residual,
    feasible,
    plan_grk_baseline,
    plan_sure_success,
    solve_phases,
)
from .subspace import (
    BLOCK,
    REM,
    SOL,
    closed_form_intermediate,
    final_operator,
    global_operator,
    initial_state,
    local_operator,
    run_plan,
    target_state,
    unitarity_defect,
)
from .sweep import (
    SweepRecord,
    emit_csv,
    emit_json,
    parse_csv,
    parse_json,
    plan_instance,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BLOCK",
    "CertificationRecord",
    "FullState",
    "IdealCounts",
    "Infeasible",
    "IterationPlan",
    "PhaseAuxiliaries",
    "PhaseSolution",
    "PlanFailure",
    "REM",
    "SOL",
    "SearchGeometry",
    "SweepRecord",
    "auxiliaries",
    "candidate_counts",
    "certify_plan",
    "closed_form_intermediate",
    "condition_residual",
    "emit_csv",
    "emit_json",
    "feasible",
    "final_operator",
    "full_final_step",
    "full_global_step",
    "full_initial_state",
    "full_local_step",
    "global_operator",
    "ideal_counts",
    "initial_state",
    "local_operator",
    "make_geometry",
    "parse_csv",
    "parse_json",
    "plan_grk_baseline",
    "plan_instance",
    "plan_sure_success",
    "project_to_subspace",
    "run_plan",
    "solve_phases",
    "sweep",
    "target_state",
    "unitarity_defect",
]
