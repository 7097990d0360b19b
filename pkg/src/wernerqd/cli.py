"""Batch command line.

Exit status: 0 success, 1 verification failure, 2 usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Optional, Sequence, TextIO

from . import checks
from .errors import CapacityError, ValidationError
from .linalg import MAX_DENSE_QUBITS, jacobi_tolerance
from .sweep import BENCH_HEADER, CURVE_HEADER, SweepConfig, bench, curve, write_csv

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _add_sweep_args(sp: argparse.ArgumentParser, default_mode: str) -> None:
    sp.add_argument("--n", type=int, nargs="+", required=True, help="qubit counts")
    sp.add_argument("--p-min", type=float, default=0.0)
    sp.add_argument("--p-max", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=11, help="p-grid points, endpoints included")
    sp.add_argument("--mode", choices=("analytic", "numeric", "both"), default=default_mode)
    sp.add_argument("--theta-steps", type=int, default=32)
    sp.add_argument("--phi-steps", type=int, default=32)
    sp.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wernerqd",
        description="Discord and logarithmic negativity of the n-qubit Werner state.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("discord-curve", help="discord vs p, closed form and optionally dense")
    _add_sweep_args(sp, "analytic")
    sp = sub.add_parser("negativity-curve", help="logarithmic negativity vs p")
    _add_sweep_args(sp, "analytic")

    sp = sub.add_parser("verify", help="cross-check closed forms against the dense pipeline")
    sp.add_argument("--n", type=int, required=True, help="largest qubit count for dense checks")
    sp.add_argument("--theta-steps", type=int, default=16)
    sp.add_argument("--phi-steps", type=int, default=16)
    sp.add_argument("--eig-tol", type=float, default=None, help=argparse.SUPPRESS)

    sp = sub.add_parser("bench", help="time structured vs dense evaluation")
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--output", default="-")
    return parser


@contextlib.contextmanager
def _open_output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _run_curve(args) -> int:
    config = SweepConfig(
        n_list=tuple(args.n),
        p_min=args.p_min,
        p_max=args.p_max,
        steps=args.steps,
        mode=args.mode,
        grid=(args.theta_steps, args.phi_steps),
    )
    config.check_capacity()
    with _open_output(args.output) as out:
        write_csv(out, CURVE_HEADER, (s.row() for s in curve(config, jobs=args.jobs)))
    return EXIT_OK


def verify(n_max: int, grid, out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    if n_max < 2:
        raise ValidationError(f"--n must be >= 2, got {n_max}")
    if n_max > MAX_DENSE_QUBITS:
        raise CapacityError(f"verify runs dense checks and needs n <= {MAX_DENSE_QUBITS}")
    ns = range(2, n_max + 1)
    ps = checks.p_grid(11)
    fd_ns = range(2, max(20, n_max) + 1)
    fd_ps = checks.p_grid(21)
    results = [
        checks.spectrum_equivalence(ns, ps),
        checks.pt_spectrum_equivalence(ns, ps),
        *checks.discord_agreement(ns, (0.1, 0.5, 0.9), grid),
        checks.negativity_equivalence(ns, ps),
        checks.threshold_sign_change(ns),
        checks.convexity(fd_ns, fd_ps),
        checks.concavity(fd_ns, fd_ps),
        checks.entropy_identity(list(ns) + [20, 50, 200], ps),
        checks.limit_approach([10, 20, 50, 100, 200], checks.p_grid(101)),
        *checks.monotonicity_in_n(list(fd_ns), fd_ps),
    ]
    failed = False
    for r in results:
        print(r.line(), file=out, flush=True)
        failed |= not r.passed
    print(f"{'FAIL' if failed else 'PASS'} overall checks={len(results)}", file=out)
    return EXIT_VERIFY if failed else EXIT_OK


def _run_verify(args) -> int:
    grid = (args.theta_steps, args.phi_steps)
    if args.eig_tol is None:
        return verify(args.n, grid)
    with jacobi_tolerance(args.eig_tol):
        return verify(args.n, grid)


def _run_bench(args) -> int:
    rows = list(bench(args.n, args.reps))
    with _open_output(args.output) as out:
        write_csv(out, BENCH_HEADER, rows)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "discord-curve": _run_curve,
        "negativity-curve": _run_curve,
        "verify": _run_verify,
        "bench": _run_bench,
    }[args.command]
    try:
        return handler(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValidationError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
