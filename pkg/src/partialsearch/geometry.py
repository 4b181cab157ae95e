"""Search-space partition geometry and ideal iteration counts.

A database of N = K*b elements is split into K blocks of size b. The three
angles theta_g, theta_l, gamma encode the problem trigonometrically:

    sin^2(theta_g) = 1/N,   sin^2(theta_l) = 1/b,   sin^2(gamma) = 1/K.

The ideal (real-valued) numbers of local and global Grover iterations solve

    cos(2*j_l*theta_l) = (K-2) / (2*(K-1)),
    tan(2*j_g*theta_g) = (K-2) / sqrt(3*K-4),

on the principal arccos/arctan branches. Integer candidates keep the floor of
j_l and add 0, 1 or 2 extra global steps to the floor of j_g.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SearchGeometry:
    """Immutable problem instance: block count K, block size b, N = K*b."""

    K: int
    b: int
    N: int
    theta_g: float
    theta_l: float
    gamma: float


@dataclass(frozen=True)
class IdealCounts:
    """Real-valued iteration counts before integer rounding."""

    j_l_real: float
    j_g_real: float


def make_geometry(K: int, b: int) -> SearchGeometry:
    """Build the geometry for K blocks of size b.

    Raises ValueError when K < 2 or b < 2: a single block makes partial
    search vacuous, and a one-element block degenerates the local rotation
    (theta_l = pi/2).
    """
    if not isinstance(K, int) or isinstance(K, bool):
        raise ValueError(f"K must be an integer >= 2 (got {K!r})")
    if not isinstance(b, int) or isinstance(b, bool):
        raise ValueError(f"b must be an integer >= 2 (got {b!r})")
    if K < 2:
        raise ValueError(f"K must be >= 2 (got {K})")
    if b < 2:
        raise ValueError(f"b must be >= 2 (got {b})")
    N = K * b
    return SearchGeometry(
        K=K,
        b=b,
        N=N,
        theta_g=_angle_of_inverse_square(N),
        theta_l=_angle_of_inverse_square(b),
        gamma=_angle_of_inverse_square(K),
    )


def _angle_of_inverse_square(n: int) -> float:
    """The angle in (0, pi/2) with sin^2 = 1/n, via tan = 1/sqrt(n-1).

    atan2 keeps the n = 2 angle exactly pi/4 in floating point (asin of
    sqrt(0.5) lands one ulp high), which in turn keeps the K = 2, b = 2
    ideal local count exactly 1.0 so its floor does not collapse to 0 on
    rounding dust.
    """
    return math.atan2(1.0, math.sqrt(n - 1.0))


def ideal_counts(g: SearchGeometry) -> IdealCounts:
    """Real-valued iteration counts on the principal inverse branches.

    arccos maps into [0, pi] and arctan into [0, pi/2); for K >= 2 both
    arguments are non-negative ((K-2)/(2(K-1)) climbs from 0 toward 1/2,
    (K-2)/sqrt(3K-4) from 0), so both counts are non-negative.
    """
    K = g.K
    j_l = math.acos((K - 2) / (2.0 * (K - 1))) / (2.0 * g.theta_l)
    j_g = math.atan((K - 2) / math.sqrt(3.0 * K - 4.0)) / (2.0 * g.theta_g)
    return IdealCounts(j_l_real=j_l, j_g_real=j_g)


def candidate_counts(ideal: IdealCounts) -> list[tuple[int, int]]:
    """The three (j_l_hat, j_g_hat) candidates: floor(j_l) with floor(j_g)+{0,1,2}."""
    j_l_hat = math.floor(ideal.j_l_real)
    j_g_base = math.floor(ideal.j_g_real)
    return [(j_l_hat, j_g_base + extra) for extra in (0, 1, 2)]
