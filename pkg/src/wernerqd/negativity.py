"""Logarithmic negativity of the Werner family across the (n-1) | 1 split."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import finite_diff
from .errors import DomainError
from .linalg import eig_hermitian, partial_transpose_b, trace_norm
from .werner import WernerParams, build_werner_dense

LN2 = math.log(2.0)


@dataclass(frozen=True)
class NegativityResult:
    threshold: float
    value: float
    separable: bool
    derivative: Optional[float]


def separability_threshold(n: int, exact: bool = False) -> Union[float, Fraction]:
    """``1 / (1 + 2**(n-1))``: the state is entangled exactly for larger ``p``."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if exact:
        return Fraction(1, 1 + 2 ** (n - 1))
    eps = math.ldexp(1.0, 1 - n)
    return eps / (1.0 + eps)


def _is_separable(params: WernerParams) -> bool:
    # Boundary point counts as separable; the value is 0 there either way.
    if isinstance(params.p, Fraction):
        return params.p <= separability_threshold(params.n, exact=True)
    return params.p <= separability_threshold(params.n)


def _value(n: int, p: float) -> float:
    # log2(((2**(n-1) + 1) p + 2**(n-1) - 1) / 2**(n-1)) = log2(1 + p - (1-p) 2**(1-n))
    return math.log1p(p - math.ldexp(1.0 - p, 1 - n)) / LN2


def _offset(n: int) -> float:
    # (2**(n-1) - 1) / (2**(n-1) + 1), written to survive large n.
    eps = math.ldexp(1.0, 1 - n)
    return (1.0 - eps) / (1.0 + eps)


def log_negativity(params: WernerParams) -> NegativityResult:
    """``N_L = log2 ||rho^T_B||_1`` from the closed form; zero when separable."""
    n, p = params.n, float(params.p)
    threshold = separability_threshold(n)
    if _is_separable(params):
        return NegativityResult(threshold, 0.0, True, None)
    value = max(_value(n, p), 0.0)
    return NegativityResult(threshold, value, False, 1.0 / (LN2 * (p + _offset(n))))


def log_negativity_dense(params: WernerParams) -> float:
    """``log2`` of the trace norm of the dense partial transpose."""
    rho = build_werner_dense(params)
    dim_a = params.dim // 2
    pt = partial_transpose_b(rho, dim_a, 2)
    del rho
    return math.log2(trace_norm(pt, validate=False))


def log_negativity_limit(p: float) -> float:
    """Large-n limit ``log2(1 + p)``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p={p} outside [0, 1]")
    return math.log2(1.0 + p)


def _check_entangled(params: WernerParams) -> float:
    p = float(params.p)
    if _is_separable(params):
        raise DomainError(
            f"p={p} is not above the separability threshold "
            f"{separability_threshold(params.n):.6g} for n={params.n}"
        )
    return p


def negativity_derivative(params: WernerParams) -> float:
    """``dN_L/dp = 1 / (ln2 (p + (2**(n-1) - 1)/(2**(n-1) + 1)))`` on the entangled interval."""
    p = _check_entangled(params)
    return 1.0 / (LN2 * (p + _offset(params.n)))


def negativity_second_derivative(params: WernerParams) -> float:
    p = _check_entangled(params)
    if p >= 1.0:
        raise DomainError("second derivative is evaluated on the open interval (threshold, 1)")
    return -1.0 / (LN2 * (p + _offset(params.n)) ** 2)


def _fd_window(params: WernerParams):
    n = params.n
    # The closed form is smooth on [threshold, 1]; stencils stay inside it.
    return (lambda t: _value(n, t)), separability_threshold(n), 1.0


def negativity_derivative_fd(params: WernerParams, h: float = finite_diff.STEP) -> float:
    p = _check_entangled(params)
    f, lo, hi = _fd_window(params)
    return finite_diff.first_derivative(f, p, h, lo, hi)


def negativity_second_derivative_fd(params: WernerParams, h: float = finite_diff.STEP) -> float:
    p = _check_entangled(params)
    f, lo, hi = _fd_window(params)
    return finite_diff.second_derivative(f, p, h, lo, hi)


def min_pt_eigenvalue_dense(params: WernerParams) -> float:
    """Smallest eigenvalue of the dense partial transpose."""
    rho = build_werner_dense(params)
    pt = partial_transpose_b(rho, params.dim // 2, 2)
    del rho
    return eig_hermitian(pt, validate=False).min


def pt_negative_part(eigenvalues: np.ndarray) -> float:
    """``sum |lam|`` over negative eigenvalues; trace norm is ``1 + 2 *`` this."""
    lam = np.asarray(eigenvalues, dtype=float)
    return float(-lam[lam < 0].sum())
