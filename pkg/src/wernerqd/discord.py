"""Quantum discord of the Werner family with a one-qubit measurement on B.

Two routes are provided. The closed form works for any ``n`` and never
materializes ``2**n``. The dense route builds the state, measures B with the
rank-1 projectors ``I_A (x) |u><u|`` and ``I_A (x) |v><v|`` over a grid of
angles, and minimizes the averaged conditional entropy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from . import finite_diff
from .entropy import shannon_entropy_bits
from .errors import CapacityError, DomainError, ValidationError
from .linalg import (
    MAX_DENSE_QUBITS,
    BlockedB,
    check_dim,
    eig_hermitian,
    kron,
    partial_trace_a,
    project_b,
)
from .werner import (
    StructuredSpectrum,
    WernerParams,
    build_werner_dense,
    ghz_mixture_spectrum,
    werner_spectrum,
)

LN2 = math.log(2.0)
DEFAULT_GRID = (32, 32)
MIN_GRID = 8
ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementAngles:
    """Polar angle ``theta`` in ``[0, pi/2]`` and azimuth ``phi`` in ``[0, 2 pi]``."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not -ANGLE_TOL <= self.theta <= math.pi / 2 + ANGLE_TOL:
            raise ValidationError(f"theta={self.theta} outside [0, pi/2]")
        if not -ANGLE_TOL <= self.phi <= 2 * math.pi + ANGLE_TOL:
            raise ValidationError(f"phi={self.phi} outside [0, 2 pi]")

    def kets(self) -> Tuple[np.ndarray, np.ndarray]:
        """``|u> = cos t |0> + e^{i f} sin t |1>`` and its orthogonal partner ``|v>``."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        phase = complex(math.cos(self.phi), math.sin(self.phi))
        u = np.array([c, phase * s], dtype=np.complex128)
        v = np.array([s, -phase * c], dtype=np.complex128)
        return u, v


@dataclass(frozen=True)
class DiscordBreakdown:
    s_b: float
    s_ab: float
    s_a_given_b: float
    discord: float
    p1: float
    p2: float
    theta: float
    phi: float
    grid: Tuple[int, int]
    cond_entropy_spread: float
    coarse_grid: bool


@dataclass(frozen=True)
class ConvexityWitness:
    x: float
    y: float
    z: float
    second_derivative_closed: float
    second_derivative_fd: float
    alpha_numerator: Fraction
    gamma_denominator: float

    @property
    def relative_error(self) -> float:
        return abs(self.second_derivative_fd - self.second_derivative_closed) / abs(
            self.second_derivative_closed
        )


# Closed forms ---------------------------------------------------------------


def joint_entropy(params: WernerParams) -> float:
    """``S(A,B)`` from the two eigenvalue families of the state."""
    return shannon_entropy_bits(werner_spectrum(params))


def conditional_spectrum(params: WernerParams) -> StructuredSpectrum:
    """Spectrum of A after either measurement outcome, for any angles.

    The post-measurement state of A is an ``(n-1)``-qubit GHZ mixture with the
    same ``p``, so its spectrum is ``(1 + (2**(n-1) - 1) p) / 2**(n-1)`` once
    and ``(1 - p) / 2**(n-1)`` with multiplicity ``2**(n-1) - 1``.
    """
    return ghz_mixture_spectrum(params.n - 1, params.p)


def conditional_entropy(params: WernerParams) -> float:
    return shannon_entropy_bits(conditional_spectrum(params))


def _gap(n: int, p: float) -> float:
    # D - p, rearranged so that no term is larger than ~n 2**-n in magnitude
    # when n is large; with x = 1-p, z = 1 + (2**(n-1) - 1) p and s = x/z:
    #   2**n (D - p) = x + y log2(1 - s/2) + x log2(s)
    x = 1.0 - p
    if p <= 0.0 or x <= 0.0:
        return 0.0
    x_n = math.ldexp(x, -n)
    y_scaled = p + x_n  # y / 2**n
    z_scaled = p + 2.0 * x_n  # z / 2**(n-1)
    s = 2.0 * x_n / z_scaled
    log2_s = math.log2(x) - (n - 1) - math.log2(z_scaled)
    return x_n + y_scaled * math.log1p(-0.5 * s) / LN2 + math.ldexp(x * log2_s, -n)


def discord_gap(params: WernerParams) -> float:
    """Signed distance ``D(n, p) - p`` from the large-n limit line."""
    return _gap(params.n, float(params.p))


def discord_closed(params: WernerParams) -> float:
    """Closed-form discord, valid for any ``n``.

    Algebraically equal to ``1 - S(A,B) + S(A|B)``; evaluated as ``p`` plus
    :func:`discord_gap` so that large ``n`` neither overflows nor cancels.
    """
    p = float(params.p)
    return p + _gap(params.n, p)


def discord_limit(p: float) -> float:
    """Discord in the limit ``n -> inf``: the line ``D = p``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p={p} outside [0, 1]")
    return float(p)


def discord_second_derivative(params: WernerParams, h: float = finite_diff.STEP) -> ConvexityWitness:
    """Convexity witness ``d2D/dp2`` at an interior ``p``.

    The closed value is ``2**(2n-1) / (2**n ln2 (1-p)(1+(2**n-1)p)(1+(2**(n-1)-1)p))``.
    The finite-difference value differentiates :func:`discord_gap`, which
    differs from the discord by the linear term ``p`` and so has the same
    second derivative while staying well conditioned for large ``n``.
    """
    n = params.n
    p = float(params.p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"second derivative needs 0 < p < 1, got p={p}")
    x = 1.0 - p
    y_scaled = p + math.ldexp(x, -n)
    z_scaled = p + math.ldexp(x, 1 - n)
    closed = math.ldexp(1.0, -n) / (LN2 * x * y_scaled * z_scaled)

    # Numerator of the combined fraction, in exact arithmetic.
    pq = Fraction(p)
    big, half = 2**n - 1, 2 ** (n - 1) - 1
    xq, yq, zq = 1 - pq, 1 + big * pq, 1 + half * pq
    alpha = yq * zq + big**2 * xq * zq - 2 * half**2 * xq * yq

    y = math.ldexp(y_scaled, n) if n < 1000 else math.inf
    z = math.ldexp(z_scaled, n - 1) if n < 1000 else math.inf
    gamma = math.ldexp(LN2, n) * x * y * z if n < 300 else math.inf

    fd = finite_diff.second_derivative(lambda t: _gap(n, t), p, h, 0.0, 1.0)
    return ConvexityWitness(x, y, z, closed, fd, alpha, gamma)


# Dense measurement pipeline -------------------------------------------------


def measurement_projectors(angles: MeasurementAngles, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """``(I_A (x) |u><u|, I_A (x) |v><v|)`` on ``n`` qubits."""
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"dense projectors limited to n <= {MAX_DENSE_QUBITS}")
    check_dim(1 << n)
    eye_a = np.eye(1 << (n - 1), dtype=np.complex128)
    u, v = angles.kets()
    return kron(eye_a, np.outer(u, u.conj())), kron(eye_a, np.outer(v, v.conj()))


def post_measurement_state(
    params: WernerParams,
    angles: MeasurementAngles,
    which: int,
    rho: Union[np.ndarray, BlockedB, None] = None,
) -> Tuple[float, np.ndarray]:
    """Outcome probability and normalized state of A after measuring B.

    ``which`` selects the projector onto ``|u>`` (1) or ``|v>`` (2). A dense
    state, or a :class:`BlockedB` split of it, may be passed in to avoid
    rebuilding it for every angle.
    """
    if which not in (1, 2):
        raise ValidationError(f"which must be 1 or 2, got {which}")
    if rho is None:
        rho = build_werner_dense(params)
    ket = angles.kets()[which - 1]
    block = project_b(rho, ket, params.dim // 2)
    prob = float(np.trace(block).real)
    return prob, block / prob


def measurement_grid(grid: Tuple[int, int]) -> Tuple[np.ndarray, np.ndarray]:
    """Uniform angles: ``theta`` with both endpoints, ``phi`` without ``2 pi``."""
    theta_steps, phi_steps = grid
    if theta_steps < 1 or phi_steps < 1:
        raise ValidationError(f"grid must be positive, got {grid}")
    thetas = np.linspace(0.0, math.pi / 2, theta_steps) if theta_steps > 1 else np.zeros(1)
    phis = np.linspace(0.0, 2 * math.pi, phi_steps, endpoint=False)
    return thetas, phis


def _state_entropy(m: np.ndarray) -> float:
    return shannon_entropy_bits(eig_hermitian(m, validate=False))


def averaged_conditional_entropy(
    params: WernerParams, angles: MeasurementAngles, rho: Union[np.ndarray, BlockedB, None] = None
) -> Tuple[float, float, float]:
    """``(sum_k p_k S(rho_A|k), p1, p2)`` for one choice of angles."""
    if rho is None:
        rho = build_werner_dense(params)
    p1, a1 = post_measurement_state(params, angles, 1, rho)
    p2, a2 = post_measurement_state(params, angles, 2, rho)
    return p1 * _state_entropy(a1) + p2 * _state_entropy(a2), p1, p2


def discord_numeric(params: WernerParams, grid: Tuple[int, int] = DEFAULT_GRID) -> DiscordBreakdown:
    """Discord from the dense state, minimizing over a ``(theta, phi)`` grid."""
    n = params.n
    if n > MAX_DENSE_QUBITS:
        raise CapacityError(f"numeric discord limited to n <= {MAX_DENSE_QUBITS}, got {n}")
    rho = build_werner_dense(params)
    dim_a = params.dim // 2
    s_ab = _state_entropy(rho)
    s_b = _state_entropy(partial_trace_a(rho, dim_a, 2, validate=False))
    blocked = BlockedB(rho, dim_a, 2)
    del rho

    thetas, phis = measurement_grid(grid)
    best = (math.inf, 0.0, 0.0, 0.0, 0.0)
    worst = -math.inf
    for theta in thetas:
        for phi in phis:
            angles = MeasurementAngles(float(theta), float(phi))
            cond, p1, p2 = averaged_conditional_entropy(params, angles, blocked)
            if cond < best[0]:
                best = (cond, p1, p2, float(theta), float(phi))
            worst = max(worst, cond)

    s_cond, p1, p2, theta, phi = best
    return DiscordBreakdown(
        s_b=s_b,
        s_ab=s_ab,
        s_a_given_b=s_cond,
        discord=s_b - s_ab + s_cond,
        p1=p1,
        p2=p2,
        theta=theta,
        phi=phi,
        grid=(int(grid[0]), int(grid[1])),
        cond_entropy_spread=worst - s_cond,
        coarse_grid=min(grid) < MIN_GRID,
    )
