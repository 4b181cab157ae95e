"""Three-dimensional invariant-subspace engine.

The whole partial-search evolution lives in the span of three orthonormal
vectors: the solution state, the normalized rest of the target block, and the
normalized remainder (everything outside the target block). States are complex
3-vectors in that basis order (indices SOL, BLOCK, REM below); operators are
3x3 complex matrices applied right-to-left, so an operator sequence written
"G_g G_l G_g^j" means G_g^j acts on the state first.

Two evaluation routes are provided for the pre-final evolution: explicit
matrix products (global_operator / local_operator) and the closed-form state
(closed_form_intermediate). They must agree; the tests enforce it.

All matrices are stored complex even when real so the phase-modified final
operator shares one composition and unitarity-check code path.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .geometry import SearchGeometry

SOL, BLOCK, REM = 0, 1, 2


def initial_state(g: SearchGeometry) -> np.ndarray:
    """Uniform superposition over all N elements, in the 3-vector basis."""
    sg, cg = math.sin(g.gamma), math.cos(g.gamma)
    sl, cl = math.sin(g.theta_l), math.cos(g.theta_l)
    return np.array([sg * sl, sg * cl, cg], dtype=complex)


def target_state(g: SearchGeometry) -> np.ndarray:
    """Uniform superposition over the target block: (sin theta_l, cos theta_l, 0)."""
    return np.array([math.sin(g.theta_l), math.cos(g.theta_l), 0.0], dtype=complex)


def _rotation_12(angle: float, third_diag: float) -> np.ndarray:
    """Rotation by `angle` in coordinates 1-2 with `third_diag` on coordinate 3."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array(
        [
            [c, s, 0.0],
            [-s, c, 0.0],
            [0.0, 0.0, third_diag],
        ],
        dtype=complex,
    )


def basis_change_matrix(g: SearchGeometry) -> np.ndarray:
    """The symmetric involution T that diagonalizes the global step.

    Entries are built from cos(theta_l) sin(gamma) / cos(theta_g) and
    cos(gamma) / cos(theta_g); T @ T = identity because
    cos^2(theta_l) sin^2(gamma) + cos^2(gamma) = cos^2(theta_g).
    """
    p = math.cos(g.theta_l) * math.sin(g.gamma) / math.cos(g.theta_g)
    q = math.cos(g.gamma) / math.cos(g.theta_g)
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, p, q],
            [0.0, q, -p],
        ],
        dtype=complex,
    )


def global_operator(g: SearchGeometry, j_g: int) -> np.ndarray:
    """j_g iterations of the global Grover step as one matrix, T M_{j_g} T.

    M_{j_g} rotates coordinates 1-2 by 2*j_g*theta_g and multiplies
    coordinate 3 by (-1)^j_g; the parity factor comes from integer parity,
    never floating-point powering.
    """
    if j_g < 0:
        raise ValueError(f"j_g must be >= 0 (got {j_g})")
    t = basis_change_matrix(g)
    parity = 1.0 if j_g % 2 == 0 else -1.0
    m = _rotation_12(2.0 * j_g * g.theta_g, parity)
    return t @ m @ t


def local_operator(g: SearchGeometry, j_l: int) -> np.ndarray:
    """j_l iterations of the blockwise Grover step: rotation by 2*j_l*theta_l.

    Entry (3,3) is exactly 1: local steps never touch the remainder.
    """
    if j_l < 0:
        raise ValueError(f"j_l must be >= 0 (got {j_l})")
    return _rotation_12(2.0 * j_l * g.theta_l, 1.0)


def closed_form_intermediate(g: SearchGeometry, j_g: int, j_l: int) -> np.ndarray:
    """State after j_g global then j_l local steps, from the closed form.

    With c_g = cos(2 j_g theta_g), s_g = sin(2 j_g theta_g), c_l, s_l the
    local analogues, and m = cos^2(theta_l) sin^2(gamma) + cos^2(gamma):

        a = [ c_l cos(theta_g) (s_g m + c_g cos(theta_g) sin(theta_g))
              + s_l cos(theta_l) sin(gamma) (c_g m - s_g cos(theta_g) sin(theta_g)) ] / cos^2(theta_g)
        b = [ -s_l cos(theta_g) (s_g m + c_g cos(theta_g) sin(theta_g))
              + c_l cos(theta_l) sin(gamma) (c_g m - s_g cos(theta_g) sin(theta_g)) ] / cos^2(theta_g)
        c = cos(gamma) (c_g m - s_g cos(theta_g) sin(theta_g)) / cos^2(theta_g)
    """
    if j_g < 0:
        raise ValueError(f"j_g must be >= 0 (got {j_g})")
    if j_l < 0:
        raise ValueError(f"j_l must be >= 0 (got {j_l})")
    sg_th, cg_th = math.sin(g.theta_g), math.cos(g.theta_g)
    sl_th, cl_th = math.sin(g.theta_l), math.cos(g.theta_l)
    s_gam, c_gam = math.sin(g.gamma), math.cos(g.gamma)

    m = cl_th**2 * s_gam**2 + c_gam**2
    c_g = math.cos(2.0 * j_g * g.theta_g)
    s_g = math.sin(2.0 * j_g * g.theta_g)
    c_l = math.cos(2.0 * j_l * g.theta_l)
    s_l = math.sin(2.0 * j_l * g.theta_l)

    grown = s_g * m + c_g * cg_th * sg_th
    shrunk = c_g * m - s_g * cg_th * sg_th
    pref = 1.0 / cg_th**2
    a = pref * (c_l * cg_th * grown + s_l * cl_th * s_gam * shrunk)
    b = pref * (-s_l * cg_th * grown + c_l * cl_th * s_gam * shrunk)
    c = pref * (c_gam * shrunk)
    return np.array([a, b, c], dtype=complex)


def final_operator(g: SearchGeometry, theta: float, phi: float) -> np.ndarray:
    """Phase-modified final global step.

    Product of two rank-one phase reflections with an overall minus sign:

        -[1 - (1 - e^{2 i theta}) |init><init|] [1 - (1 - e^{i (phi - theta)}) |sol><sol|]

    At theta = pi/2, phi = 3*pi/2 both phase factors become 2 and the matrix
    reduces to the standard (unmodified) global Grover step.
    """
    sg, cg = math.sin(g.gamma), math.cos(g.gamma)
    sl, cl = math.sin(g.theta_l), math.cos(g.theta_l)
    f = 1.0 - cmath.exp(2.0j * theta)
    p = cmath.exp(1.0j * (phi - theta))
    return np.array(
        [
            [
                -p * (1.0 - f * sg**2 * sl**2),
                f * sg**2 * sl * cl,
                f * cg * sg * sl,
            ],
            [
                p * f * sg**2 * sl * cl,
                f * sg**2 * cl**2 - 1.0,
                f * cg * sg * cl,
            ],
            [
                p * f * sg * sl * cg,
                f * sg * cg * cl,
                f * cg**2 - 1.0,
            ],
        ],
        dtype=complex,
    )


def run_plan(g: SearchGeometry, plan) -> np.ndarray:
    """Final state of the full sequence: G_final G_l^{j_l} G_g^{j_g} |init>."""
    state = global_operator(g, plan.j_g_hat) @ initial_state(g)
    state = local_operator(g, plan.j_l_hat) @ state
    return final_operator(g, plan.phases.theta, plan.phases.phi) @ state


def unitarity_defect(op: np.ndarray) -> float:
    """Max absolute entry of op^dagger op - identity."""
    eye = np.eye(op.shape[0], dtype=complex)
    return float(np.max(np.abs(op.conj().T @ op - eye)))
