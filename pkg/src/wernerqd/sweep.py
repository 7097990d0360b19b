"""Parameter sweeps producing CSV rows, and the structured-vs-dense benchmark."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, TextIO, Tuple

from . import discord as qd
from . import negativity as neg
from .errors import CapacityError, ValidationError
from .linalg import MAX_DENSE_QUBITS, eig_hermitian
from .werner import WernerParams, build_werner_dense, werner_spectrum
from .entropy import shannon_entropy_bits

CURVE_HEADER = ("n", "p", "discord_closed", "discord_numeric", "abs_gap", "log_negativity", "separable")
BENCH_HEADER = ("n", "path", "reps", "mean_seconds", "min_seconds", "status")
MODES = ("analytic", "numeric", "both")
GAP_TOL = 1e-6


@dataclass(frozen=True)
class SweepConfig:
    n_list: Tuple[int, ...]
    p_min: float = 0.0
    p_max: float = 1.0
    steps: int = 11
    mode: str = "analytic"
    grid: Tuple[int, int] = qd.DEFAULT_GRID

    def __post_init__(self) -> None:
        if not self.n_list:
            raise ValidationError("n_list is empty")
        if any(n < 2 for n in self.n_list):
            raise ValidationError(f"every n must be >= 2, got {list(self.n_list)}")
        if not 0.0 <= self.p_min < self.p_max <= 1.0:
            raise ValidationError(f"need 0 <= p_min < p_max <= 1, got {self.p_min}, {self.p_max}")
        if self.steps < 2:
            raise ValidationError(f"steps must be >= 2, got {self.steps}")
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}, got {self.mode!r}")
        if min(self.grid) < 1:
            raise ValidationError(f"grid must be positive, got {self.grid}")

    @property
    def numeric(self) -> bool:
        return self.mode != "analytic"

    def check_capacity(self) -> None:
        if self.numeric:
            too_big = [n for n in self.n_list if n > MAX_DENSE_QUBITS]
            if too_big:
                raise CapacityError(
                    f"numeric mode needs n <= {MAX_DENSE_QUBITS}; got {too_big}"
                )

    def p_values(self) -> List[float]:
        span = self.p_max - self.p_min
        last = self.steps - 1
        # Endpoints are hit exactly.
        return [self.p_min + span * i / last if i < last else self.p_max for i in range(self.steps)]

    def points(self) -> List[Tuple[int, float]]:
        return [(n, p) for n in sorted(self.n_list) for p in self.p_values()]


@dataclass(frozen=True)
class CurveSample:
    n: int
    p: float
    discord_closed: float
    discord_numeric: Optional[float]
    abs_gap: Optional[float]
    log_negativity: float
    separable: bool

    @property
    def gap_ok(self) -> Optional[bool]:
        return None if self.abs_gap is None else self.abs_gap < GAP_TOL

    def row(self) -> List[str]:
        return [
            str(self.n),
            format_float(self.p),
            format_float(self.discord_closed),
            format_float(self.discord_numeric),
            format_float(self.abs_gap),
            format_float(self.log_negativity),
            "true" if self.separable else "false",
        ]


def format_float(x: Optional[float]) -> str:
    """12 significant digits, always with a decimal point; empty for ``None``."""
    if x is None:
        return ""
    x = float(x) + 0.0
    s = f"{x:.12g}"
    if not math.isfinite(x):
        return s
    mantissa, e, exponent = s.partition("e")
    if "." not in mantissa:
        mantissa += ".0"
    return mantissa + e + exponent


def sample(n: int, p: float, numeric: bool, grid: Tuple[int, int]) -> CurveSample:
    params = WernerParams(n, p)
    closed = qd.discord_closed(params)
    nl = neg.log_negativity(params)
    num = gap = None
    if numeric:
        num = qd.discord_numeric(params, grid).discord
        gap = abs(closed - num)
    return CurveSample(n, float(params.p), closed, num, gap, nl.value, nl.separable)


def _sample_star(args) -> CurveSample:
    return sample(*args)


def curve(config: SweepConfig, jobs: int = 1) -> Iterator[CurveSample]:
    """Samples in ``n``-major, ``p``-minor order, whatever the worker count."""
    config.check_capacity()
    tasks = [(n, p, config.numeric, config.grid) for n, p in config.points()]
    if jobs <= 1:
        yield from map(_sample_star, tasks)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_sample_star, tasks)


def write_csv(out: TextIO, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
        out.flush()


def curve_csv(config: SweepConfig) -> str:
    buf = io.StringIO()
    write_csv(buf, CURVE_HEADER, (s.row() for s in curve(config)))
    return buf.getvalue()


# Benchmark ------------------------------------------------------------------


def _structured(n: int) -> None:
    for p in (0.25, 0.5, 0.75):
        params = WernerParams(n, p)
        shannon_entropy_bits(werner_spectrum(params))
        qd.discord_closed(params)
        neg.log_negativity(params)


def _dense(n: int) -> None:
    for p in (0.25, 0.5, 0.75):
        eig_hermitian(build_werner_dense(WernerParams(n, p)))


def _time(fn, n: int, reps: int) -> Tuple[float, float]:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn(n)
        times.append(time.perf_counter() - t0)
    return sum(times) / reps, min(times)


def bench(n_list: Sequence[int], reps: int) -> Iterator[List[str]]:
    """Wall-time rows: structured closed forms vs dense build + Jacobi, per ``n``."""
    if reps < 1:
        raise ValidationError(f"reps must be >= 1, got {reps}")
    for n in n_list:
        WernerParams(n, 0.5)
        mean, best = _time(_structured, n, reps)
        yield [str(n), "structured", str(reps), format_float(mean), format_float(best), "ok"]
        if n <= MAX_DENSE_QUBITS:
            mean, best = _time(_dense, n, reps)
            yield [str(n), "dense", str(reps), format_float(mean), format_float(best), "ok"]
        else:
            yield [str(n), "dense", str(reps), "", "", "skipped"]
