"""Cross-checks between the closed forms and the dense numerical pipeline.

Each check returns a :class:`CheckResult`; none of them raise on failure, so
callers can report every check in one pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import discord as qd
from . import negativity as neg
from .linalg import eig_hermitian, partial_transpose_b
from .werner import WernerParams, build_werner_dense, pt_spectrum, werner_spectrum


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name} worst={self.worst:.3e} tol={self.tolerance:.1e}"
            + (f" {self.detail}" if self.detail else "")
        )


def p_grid(points: int) -> List[float]:
    return [i / (points - 1) for i in range(points)]


def _result(name: str, worst: float, tol: float, where, passed: Optional[bool] = None) -> CheckResult:
    ok = worst < tol if passed is None else passed
    detail = "" if ok or where is None else f"at {where}"
    return CheckResult(name, ok, worst, tol, detail)


def _multiset_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(np.sort(a) - np.sort(b)).max())


def spectrum_equivalence(ns: Iterable[int], ps: Sequence[float], tol: float = 1e-10) -> CheckResult:
    """Structured spectrum of the state vs the dense Jacobi spectrum."""
    worst, where = 0.0, None
    for n in ns:
        for p in ps:
            params = WernerParams(n, p)
            dense = eig_hermitian(build_werner_dense(params), validate=False).eigenvalues
            err = _multiset_distance(dense, werner_spectrum(params).to_array())
            if not err <= worst:
                worst, where = err, (n, p)
    return _result("spectrum_equivalence", worst, tol, where)


def pt_spectrum_equivalence(ns: Iterable[int], ps: Sequence[float], tol: float = 1e-10) -> CheckResult:
    """Structured partial-transpose spectrum vs the dense one."""
    worst, where = 0.0, None
    for n in ns:
        for p in ps:
            params = WernerParams(n, p)
            rho = build_werner_dense(params)
            pt = partial_transpose_b(rho, params.dim // 2, 2)
            del rho
            dense = eig_hermitian(pt, validate=False).eigenvalues
            err = _multiset_distance(dense, pt_spectrum(params).to_array())
            if not err <= worst:
                worst, where = err, (n, p)
    return _result("pt_spectrum_equivalence", worst, tol, where)


def discord_agreement(
    ns: Iterable[int],
    ps: Sequence[float],
    grid: Tuple[int, int],
    tol: float = 1e-6,
    flatness_tol: float = 1e-10,
    large_n: int = 9,
    large_ps: Sequence[float] = (0.5,),
) -> Tuple[CheckResult, CheckResult]:
    """Dense grid-minimized discord vs closed form, plus flatness over the grid.

    From ``large_n`` qubits upward each point costs a full angle grid of
    ``2**(n-1)``-dimensional eigenproblems, so only ``large_ps`` are used there.
    """
    worst_gap, gap_at = 0.0, None
    worst_spread, spread_at = 0.0, None
    for n in ns:
        for p in ps if n < large_n else large_ps:
            params = WernerParams(n, p)
            b = qd.discord_numeric(params, grid)
            gap = abs(b.discord - qd.discord_closed(params))
            if not gap <= worst_gap:
                worst_gap, gap_at = gap, (n, p)
            if not b.cond_entropy_spread <= worst_spread:
                worst_spread, spread_at = b.cond_entropy_spread, (n, p)
    return (
        _result("discord_gap", worst_gap, tol, gap_at),
        _result("measurement_flatness", worst_spread, flatness_tol, spread_at),
    )


def negativity_equivalence(ns: Iterable[int], ps: Sequence[float], tol: float = 1e-10) -> CheckResult:
    """``log2`` trace norm of the dense partial transpose vs the closed form."""
    worst, where = 0.0, None
    for n in ns:
        for p in ps:
            params = WernerParams(n, p)
            err = abs(neg.log_negativity_dense(params) - neg.log_negativity(params).value)
            if not err <= worst:
                worst, where = err, (n, p)
    return _result("negativity_equivalence", worst, tol, where)


def threshold_bracket(n: int, dp: float = 1e-4) -> Tuple[float, float]:
    """Bisect the sign change of the dense minimum PT eigenvalue down to width ``dp``."""
    lo, hi = 0.0, 1.0
    while hi - lo > dp:
        mid = 0.5 * (lo + hi)
        if neg.min_pt_eigenvalue_dense(WernerParams(n, mid)) < 0.0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def threshold_bisection(ns: Iterable[int], dp: float = 1e-4) -> CheckResult:
    """The bisected sign change lies within one step ``dp`` of ``1 / (1 + 2**(n-1))``."""
    worst, where = 0.0, None
    for n in ns:
        lo, hi = threshold_bracket(n, dp)
        t = neg.separability_threshold(n)
        dist = abs(t - 0.5 * (lo + hi))
        if not dist <= worst:
            worst, where = dist, (n, lo, hi, t)
    return _result("threshold_bisection", worst, dp, where, passed=worst <= dp)


def threshold_sign_change(ns: Iterable[int], delta: float = 1e-4) -> CheckResult:
    """Minimum PT eigenvalue is >= 0 just below the threshold and < 0 just above."""
    worst, where, ok = 0.0, None, True
    for n in ns:
        t = neg.separability_threshold(n)
        below = neg.min_pt_eigenvalue_dense(WernerParams(n, max(t - delta, 0.0)))
        above = neg.min_pt_eigenvalue_dense(WernerParams(n, t + delta))
        if not (below >= 0.0 and above < 0.0):
            ok, where = False, (n, below, above)
            worst = max(worst, -below if below < 0 else above)
    return _result("threshold_sign_change", worst, delta, where, passed=ok)


def convexity(ns: Iterable[int], ps: Sequence[float], rel_tol: float = 1e-4) -> CheckResult:
    """Finite-difference second derivative of the discord is positive and matches the closed value."""
    worst, where, ok = 0.0, None, True
    for n in ns:
        for p in ps:
            if not 0.0 < p < 1.0:
                continue
            w = qd.discord_second_derivative(WernerParams(n, p))
            rel = w.relative_error
            if w.second_derivative_fd <= 0.0 or not rel < rel_tol:
                ok, where = False, (n, p, w.second_derivative_fd, w.second_derivative_closed)
            worst = max(worst, rel)
    return _result("convexity", worst, rel_tol, where, passed=ok)


def concavity(ns: Iterable[int], ps: Sequence[float], rel_tol: float = 1e-4) -> CheckResult:
    """Finite-difference second derivative of N_L is negative and matches the closed value."""
    worst, where, ok = 0.0, None, True
    for n in ns:
        t = neg.separability_threshold(n)
        for p in ps:
            if not t < p < 1.0:
                continue
            params = WernerParams(n, p)
            fd = neg.negativity_second_derivative_fd(params)
            closed = neg.negativity_second_derivative(params)
            rel = abs(fd - closed) / abs(closed)
            if fd >= 0.0 or not rel < rel_tol:
                ok, where = False, (n, p, fd, closed)
            worst = max(worst, rel)
    return _result("concavity", worst, rel_tol, where, passed=ok)


def limit_approach(ns: Sequence[int], ps: Sequence[float], tol: float = 1e-3) -> CheckResult:
    """``max_p |D(n, p) - p|`` decreases with ``n`` and is below ``tol`` at the largest ``n``.

    The distance is taken from :func:`discord_gap`, which resolves it far
    below the rounding unit of ``D`` itself (at ``n = 200`` it is ~1e-58).
    """
    sups = [max(abs(qd.discord_gap(WernerParams(n, p))) for p in ps) for n in ns]
    decreasing = all(b < a for a, b in zip(sups, sups[1:]))
    ok = decreasing and sups[-1] < tol
    where = None if ok else tuple(zip(ns, (f"{s:.3e}" for s in sups)))
    return _result("discord_limit", sups[-1], tol, where, passed=ok)


def _strictly_increasing_in_n(
    name: str, f: Callable[[int, float], float], ns: Sequence[int], ps: Sequence[float]
) -> CheckResult:
    worst, where, ok = math.inf, None, True
    for p in ps:
        values = [f(n, p) for n in ns]
        for n, a, b in zip(ns, values, values[1:]):
            worst = min(worst, b - a)
            if not b > a:
                ok, where = False, (n, p, a, b)
    return CheckResult(name, ok, worst, 0.0, "" if ok else f"at {where}")


def monotonicity_in_n(ns: Sequence[int], ps: Sequence[float]) -> List[CheckResult]:
    """Discord and N_L both strictly increase with ``n`` at fixed ``p``.

    For N_L only points with ``p`` above the threshold of the smallest ``n``
    are used, since below it both sides are zero.
    """
    t0 = neg.separability_threshold(min(ns))
    return [
        _strictly_increasing_in_n(
            "discord_monotone_in_n",
            lambda n, p: qd.discord_closed(WernerParams(n, p)),
            ns,
            [p for p in ps if 0.0 < p < 1.0],
        ),
        _strictly_increasing_in_n(
            "negativity_monotone_in_n",
            lambda n, p: neg.log_negativity(WernerParams(n, p)).value,
            ns,
            [p for p in ps if t0 < p < 1.0],
        ),
    ]


def entropy_identity(ns: Iterable[int], ps: Sequence[float], tol: float = 1e-12) -> CheckResult:
    """Closed-form discord equals ``1 - S(A,B) + S(A|B)``, relative to ``n``."""
    worst, where = 0.0, None
    for n in ns:
        for p in ps:
            params = WernerParams(n, p)
            via = 1.0 - qd.joint_entropy(params) + qd.conditional_entropy(params)
            err = abs(via - qd.discord_closed(params)) / n
            if not err <= worst:
                worst, where = err, (n, p)
    return _result("entropy_identity", worst, tol, where)
