"""Dense N-dimensional oracle simulator.

Independent cross-check for the subspace engine: the global step, local step
and phase-modified final step are built from first principles as rank-one
reflections on the full N-vector (never materialized as N x N matrices), and
a plan is certified by measuring how much probability escapes the target
block. Nothing here trusts the 3x3 algebra; agreement between the two routes
is what the tests assert.

Conventions (sign fixed by entrywise agreement with the subspace matrices):
the global step is -(1 - 2|init><init|)(1 - 2|sol><sol|), i.e. oracle phase
flip followed by inversion about the global mean; the local step flips the
solution then inverts every block about its own mean, which leaves any
block-uniform amplitude pattern outside the target block untouched.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import SearchGeometry
from .phases import IterationPlan
from .subspace import final_operator, global_operator, local_operator, run_plan
from .subspace import initial_state as subspace_initial_state


@dataclass(frozen=True)
class FullState:
    """Complex amplitude vector over all N elements plus its problem context."""

    amplitudes: np.ndarray
    geometry: SearchGeometry
    solution_index: int

    @property
    def target_block(self) -> int:
        return self.solution_index // self.geometry.b


@dataclass(frozen=True)
class CertificationRecord:
    """Outcome of one brute-force certification run.

    probability_outside/inside partition the final state across the target
    block boundary. projection_deviation compares the final full state's
    3-vector projection against the subspace run_plan output;
    trajectory_deviation is the same comparison maximized over every
    intermediate step, and subspace_leak is the largest euclidean norm of the
    full state's component orthogonal to the 3-dimensional basis seen along
    the way. norm_defect tracks the worst unit-norm violation.
    """

    solution_index: int
    probability_outside: float
    probability_inside: float
    projection_deviation: float
    trajectory_deviation: float
    subspace_leak: float
    norm_defect: float


def full_initial_state(g: SearchGeometry, solution_index: int) -> FullState:
    """Uniform superposition 1/sqrt(N) everywhere."""
    if not 0 <= solution_index < g.N:
        raise ValueError(
            f"solution_index must be in [0, {g.N}) (got {solution_index})"
        )
    amps = np.full(g.N, 1.0 / math.sqrt(g.N), dtype=complex)
    return FullState(amplitudes=amps, geometry=g, solution_index=solution_index)


def _global_step(a: np.ndarray, sol: int) -> None:
    """In place: oracle flip on sol, then inversion about the global mean."""
    a[sol] = -a[sol]
    mean = a.mean()
    np.subtract(2.0 * mean, a, out=a)


def _local_step(a: np.ndarray, sol: int, K: int, b: int) -> None:
    """In place: oracle flip on sol, then inversion about each block's mean."""
    a[sol] = -a[sol]
    blocks = a.reshape(K, b)
    means = blocks.mean(axis=1)
    np.subtract(2.0 * means[:, None], blocks, out=blocks)


def _final_step(a: np.ndarray, sol: int, theta: float, phi: float) -> None:
    """In place: the two-projector phase-modified final step.

    [1 - (1 - e^{i(phi-theta)}) |sol><sol|] rescales the solution amplitude;
    [1 - (1 - e^{2 i theta}) |init><init|] is a rank-one update against the
    uniform state (inner product = sum / sqrt(N)); overall minus sign last.
    """
    a[sol] *= cmath.exp(1.0j * (phi - theta))
    a -= (1.0 - cmath.exp(2.0j * theta)) * (a.sum() / a.size)
    np.negative(a, out=a)


def full_global_step(state: FullState) -> FullState:
    """One global Grover iteration (pure)."""
    a = state.amplitudes.copy()
    _global_step(a, state.solution_index)
    return FullState(a, state.geometry, state.solution_index)


def full_local_step(state: FullState) -> FullState:
    """One blockwise Grover iteration (pure)."""
    a = state.amplitudes.copy()
    _local_step(a, state.solution_index, state.geometry.K, state.geometry.b)
    return FullState(a, state.geometry, state.solution_index)


def full_final_step(state: FullState, theta: float, phi: float) -> FullState:
    """The phase-modified final step (pure)."""
    a = state.amplitudes.copy()
    _final_step(a, state.solution_index, theta, phi)
    return FullState(a, state.geometry, state.solution_index)


def project_to_subspace(state: FullState) -> np.ndarray:
    """Overlaps with (solution, rest-of-target-block, remainder) basis vectors."""
    g = state.geometry
    a = state.amplitudes
    sol = state.solution_index
    lo = state.target_block * g.b
    block_sum = a[lo : lo + g.b].sum()
    total = a.sum()
    p_sol = a[sol]
    p_block = (block_sum - p_sol) / math.sqrt(g.b - 1)
    p_rem = (total - block_sum) / math.sqrt(g.N - g.b)
    return np.array([p_sol, p_block, p_rem], dtype=complex)


def _subspace_leak(a: np.ndarray, proj: np.ndarray, sol: int, lo: int, b: int) -> float:
    """Euclidean norm of the component orthogonal to the 3-vector basis.

    Computed by explicit reconstruction subtraction; the norm-difference
    shortcut cancels catastrophically at the 1e-12 scale of interest.
    """
    n = a.size
    rest_val = proj[2] / math.sqrt(n - b)
    resid = a - rest_val
    block = a[lo : lo + b] - proj[1] / math.sqrt(b - 1)
    block[sol - lo] = a[sol] - proj[0]
    resid[lo : lo + b] = block
    return float(np.linalg.norm(resid))


def certify_plan(
    g: SearchGeometry,
    plan: IterationPlan,
    solution_index: int = 0,
    track_trajectory: bool = True,
) -> CertificationRecord:
    """Run the full plan at dimension N and measure sure success directly.

    With track_trajectory the full state's 3-vector projection is compared
    after every step against an independently stepped subspace state, and the
    out-of-subspace leak and norm defect are maximized along the way; without
    it only the final-state quantities are computed (the projection deviation
    then compares against run_plan alone). Callers gate N; dense simulation
    is O(N) per step.
    """
    theta, phi = plan.phases.theta, plan.phases.phi
    a = np.full(g.N, 1.0 / math.sqrt(g.N), dtype=complex)
    sol = solution_index
    if not 0 <= sol < g.N:
        raise ValueError(f"solution_index must be in [0, {g.N}) (got {sol})")
    lo = (sol // g.b) * g.b
    state_view = FullState(a, g, sol)

    traj_dev = 0.0
    leak = 0.0
    norm_defect = 0.0
    if track_trajectory:
        g3 = global_operator(g, 1)
        l3 = local_operator(g, 1)
        t3 = subspace_initial_state(g)

        def check() -> None:
            nonlocal traj_dev, leak, norm_defect
            proj = project_to_subspace(state_view)
            traj_dev = max(traj_dev, float(np.max(np.abs(proj - t3))))
            leak = max(leak, _subspace_leak(a, proj, sol, lo, g.b))
            norm_defect = max(norm_defect, abs(float(np.linalg.norm(a)) - 1.0))

        check()
        for _ in range(plan.j_g_hat):
            _global_step(a, sol)
            t3 = g3 @ t3
            check()
        for _ in range(plan.j_l_hat):
            _local_step(a, sol, g.K, g.b)
            t3 = l3 @ t3
            check()
        _final_step(a, sol, theta, phi)
        t3 = final_operator(g, theta, phi) @ t3
        check()
    else:
        for _ in range(plan.j_g_hat):
            _global_step(a, sol)
        for _ in range(plan.j_l_hat):
            _local_step(a, sol, g.K, g.b)
        _final_step(a, sol, theta, phi)
        norm_defect = abs(float(np.linalg.norm(a)) - 1.0)

    probs = np.abs(a) ** 2
    inside = float(probs[lo : lo + g.b].sum())
    outside = float(probs[:lo].sum() + probs[lo + g.b :].sum())
    final_proj = project_to_subspace(state_view)
    proj_dev = float(np.max(np.abs(final_proj - run_plan(g, plan))))
    return CertificationRecord(
        solution_index=sol,
        probability_outside=outside,
        probability_inside=inside,
        projection_deviation=proj_dev,
        trajectory_deviation=traj_dev,
        subspace_leak=leak,
        norm_defect=norm_defect,
    )
