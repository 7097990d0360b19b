"""Finite-difference stencils used by the derivative witnesses."""

from __future__ import annotations

from typing import Callable

STEP = 1e-4


def second_derivative(
    f: Callable[[float], float],
    x: float,
    h: float = STEP,
    lo: float = float("-inf"),
    hi: float = float("inf"),
) -> float:
    """Second derivative of ``f`` at ``x``, never sampling outside ``[lo, hi]``.

    Central three-point stencil when both neighbours fit, otherwise the
    four-point one-sided stencil of the same order.
    """
    if x - h >= lo and x + h <= hi:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    if x + 3 * h <= hi:
        return (2.0 * f(x) - 5.0 * f(x + h) + 4.0 * f(x + 2 * h) - f(x + 3 * h)) / (h * h)
    if x - 3 * h >= lo:
        return (2.0 * f(x) - 5.0 * f(x - h) + 4.0 * f(x - 2 * h) - f(x - 3 * h)) / (h * h)
    raise ValueError(f"interval [{lo}, {hi}] too short for step {h}")


def first_derivative(
    f: Callable[[float], float],
    x: float,
    h: float = STEP,
    lo: float = float("-inf"),
    hi: float = float("inf"),
) -> float:
    """First derivative, central when possible, else second-order one-sided."""
    if x - h >= lo and x + h <= hi:
        return (f(x + h) - f(x - h)) / (2.0 * h)
    if x + 2 * h <= hi:
        return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2 * h)) / (2.0 * h)
    if x - 2 * h >= lo:
        return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)) / (2.0 * h)
    raise ValueError(f"interval [{lo}, {hi}] too short for step {h}")
