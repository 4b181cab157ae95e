"""Sure-success phase solving and iteration planning.

After j_g global and j_l local Grover steps the state is a real 3-vector
(a, b, c). The final step carries two free phases (theta, phi) and the block
is found with certainty exactly when

    e^{i (phi - theta)} (1 - e^{2 i theta}) x + (1 - e^{2 i theta}) y + 2 z = 0,

where x = a sin(gamma) sin(theta_l) cos(gamma),
      y = b sin(gamma) cos(gamma) cos(theta_l) + c cos^2(gamma),
      z = -c / 2.

Splitting into real and imaginary parts and eliminating phi gives

    sin^2(theta) = z^2 / (x^2 - y^2 - 2 y z),
    sin(phi) = -(y/x) sin(theta) - z / (x sin(theta)),
    cos(phi) = -(y/x) cos(theta),

solvable when x^2 >= (y+z)^2. The solver below reads that inequality
strictly (relative margin BOUNDARY_TOL) and requires x != 0 outright, since
both phi formulas divide by x. The strictness matters: candidates sitting
exactly on the boundary (sin^2 theta = 1, where only floating-point dust
decides) are rejected as infeasible rather than resolved by rounding luck.
The lone such case is K = 2, b = 2, where all three iteration-count
candidates are degenerate (the relative margins there are rounding dust of
order 1e-16, versus 3.8e-6 for the closest legitimate instance in the whole
N <= 1e4 sweep).

Planning walks the three candidates floor(j_g) + {0, 1, 2} in order and
returns the first solvable one. Residuals are always re-evaluated from the
full complex condition; they are the ground truth that accepts a branch.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import SearchGeometry, candidate_counts, ideal_counts
from .subspace import (
    BLOCK,
    REM,
    SOL,
    closed_form_intermediate,
    global_operator,
    initial_state,
    local_operator,
)

IMAG_TOL = 1e-12
X_TOL = 1e-13
Z_TOL = 1e-13
FEASIBLE_SLACK = 1e-12  # lenient absolute slack in the feasible() predicate
BOUNDARY_TOL = 1e-12  # strict relative margin demanded by solve_phases
DENOM_TOL = 1e-13
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class PhaseAuxiliaries:
    """The real triple (x, y, z) feeding the phase equations."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class PhaseSolution:
    """Solved correction phases; residual is |LHS| of the phase condition."""

    theta: float
    phi: float
    residual: float


@dataclass(frozen=True)
class Infeasible:
    """Why a candidate has no phase solution.

    reason is one of:
      "inequality" - x^2 > (y+z)^2 fails (strictly, margin BOUNDARY_TOL);
      "x-zero"     - x = 0, the phi formulas divide by x;
      "residual"   - both cos(theta) branches left residual >= RESIDUAL_TOL.
    """

    reason: str
    detail: str = ""


@dataclass(frozen=True)
class IterationPlan:
    """Accepted integer counts plus solved phases for the final step."""

    j_l_hat: int
    j_g_hat: int
    offset: int
    phases: PhaseSolution

    @property
    def oracle_queries(self) -> int:
        """Every Grover step queries the oracle once, the modified final one included."""
        return self.j_g_hat + self.j_l_hat + 1


@dataclass(frozen=True)
class PlanFailure:
    """All three candidates rejected; attempts pair (j_l, j_g, offset) with reasons."""

    attempts: tuple[tuple[int, int, int, Infeasible], ...]

    def describe(self) -> str:
        lines = []
        for j_l, j_g, offset, inf in self.attempts:
            extra = f": {inf.detail}" if inf.detail else ""
            lines.append(f"offset {offset} (j_l={j_l}, j_g={j_g}): {inf.reason}{extra}")
        return "; ".join(lines)


def auxiliaries(g: SearchGeometry, state: np.ndarray) -> PhaseAuxiliaries:
    """Map an intermediate state (a, b, c) to the phase-equation triple.

    The pre-final evolution is real, so any appreciable imaginary part
    signals a pipeline bug and raises.
    """
    worst = float(np.max(np.abs(np.imag(state))))
    if worst > IMAG_TOL:
        raise ValueError(
            f"intermediate state has imaginary parts up to {worst:.3e}; "
            "pre-final evolution must be real"
        )
    a, b, c = (float(np.real(state[i])) for i in (SOL, BLOCK, REM))
    sg, cg = math.sin(g.gamma), math.cos(g.gamma)
    sl, cl = math.sin(g.theta_l), math.cos(g.theta_l)
    return PhaseAuxiliaries(
        x=a * sg * sl * cg,
        y=b * sg * cg * cl + c * cg**2,
        z=-c / 2.0,
    )


def feasible(aux: PhaseAuxiliaries) -> bool:
    """Whether the phase condition admits a solution for this triple.

    z = 0 short-circuits to True (theta = 0 solves the condition outright).
    Otherwise the solvability inequality x^2 >= (y+z)^2 must hold and the
    sin^2(theta) denominator x^2 - y^2 - 2 y z must be positive; the two are
    algebraically the same statement (x^2 - y^2 - 2yz >= z^2) but carry
    different numerical guards.
    """
    x, y, z = aux.x, aux.y, aux.z
    if abs(z) <= Z_TOL:
        return True
    return x**2 >= (y + z) ** 2 - FEASIBLE_SLACK and x**2 - y**2 - 2.0 * y * z > DENOM_TOL


def condition_residual(aux: PhaseAuxiliaries, theta: float, phi: float) -> float:
    """|LHS| of the phase condition at the given phases."""
    f = 1.0 - cmath.exp(2.0j * theta)
    lhs = cmath.exp(1.0j * (phi - theta)) * f * aux.x + f * aux.y + 2.0 * aux.z
    return abs(lhs)


def solve_phases(aux: PhaseAuxiliaries) -> PhaseSolution | Infeasible:
    """Solve for (theta, phi) or explain why the candidate is infeasible.

    sin(theta) is fixed non-negative; both signs of cos(theta) are tried and
    a branch is accepted by its residual. phi comes from atan2 of the exact
    sin(phi)/cos(phi) expressions, so theta lands in [0, pi) and phi in
    [0, 2*pi).
    """
    x, y, z = aux.x, aux.y, aux.z
    if abs(x) <= X_TOL:
        return Infeasible("x-zero", f"x={x:.3e}")
    if abs(z) <= Z_TOL:
        # Remainder amplitude is already (numerically) zero; theta = 0 makes
        # the final step a pure per-component rephasing and keeps it zero.
        return PhaseSolution(theta=0.0, phi=0.0, residual=condition_residual(aux, 0.0, 0.0))
    margin = x**2 - (y + z) ** 2
    if margin <= BOUNDARY_TOL * (x**2 + (y + z) ** 2):
        return Infeasible("inequality", f"x^2-(y+z)^2={margin:.3e}")
    denom = x**2 - y**2 - 2.0 * y * z  # = margin + z^2 > 0 here
    sin2 = min(z**2 / denom, 1.0)
    sin_t = math.sqrt(sin2)
    best: Infeasible | PhaseSolution = Infeasible("residual")
    worst_residual = math.inf
    for cos_sign in (1.0, -1.0):
        cos_t = cos_sign * math.sqrt(max(1.0 - sin2, 0.0))
        sin_p = -(y / x) * sin_t - z / (x * sin_t)
        cos_p = -(y / x) * cos_t
        theta = math.atan2(sin_t, cos_t)
        phi = math.atan2(sin_p, cos_p) % (2.0 * math.pi)
        residual = condition_residual(aux, theta, phi)
        if residual < RESIDUAL_TOL:
            return PhaseSolution(theta=theta, phi=phi, residual=residual)
        worst_residual = min(worst_residual, residual)
    best = Infeasible("residual", f"best residual {worst_residual:.3e} on both branches")
    return best


def plan_sure_success(g: SearchGeometry) -> IterationPlan | PlanFailure:
    """First solvable candidate among floor counts with 0, 1, 2 extra global steps.

    The intermediate state for each candidate comes from the closed form (the
    auxiliaries are then immediate); equivalence with stepwise matrix products
    is enforced by the test suite, and the returned plan's phases are
    certified downstream against both evaluation routes.
    """
    ideal = ideal_counts(g)
    attempts: list[tuple[int, int, int, Infeasible]] = []
    for offset, (j_l, j_g) in enumerate(candidate_counts(ideal)):
        state = closed_form_intermediate(g, j_g, j_l)
        result = solve_phases(auxiliaries(g, state))
        if isinstance(result, PhaseSolution):
            return IterationPlan(j_l_hat=j_l, j_g_hat=j_g, offset=offset, phases=result)
        attempts.append((j_l, j_g, offset, result))
    return PlanFailure(attempts=tuple(attempts))


def _round_half_away(v: float) -> int:
    """Nearest integer, half away from zero; counts are non-negative here."""
    return math.floor(v + 0.5)


def plan_grk_baseline(g: SearchGeometry) -> tuple[int, int, float]:
    """Nearest-integer iteration counts with an unmodified final global step.

    Runs G_g G_l^{j_l} G_g^{j_g} on the initial state and returns
    (j_l, j_g, 1 - |remainder amplitude|^2): the probability of landing in
    the target block without any phase correction.
    """
    ideal = ideal_counts(g)
    j_l = _round_half_away(ideal.j_l_real)
    j_g = _round_half_away(ideal.j_g_real)
    state = global_operator(g, j_g) @ initial_state(g)
    state = local_operator(g, j_l) @ state
    state = global_operator(g, 1) @ state
    success = 1.0 - float(abs(state[REM]) ** 2)
    return j_l, j_g, success
