"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test records a one-line verdict; the lines are printed in the terminal
summary of a pytest run and by running this file directly.
"""

import math
from fractions import Fraction

import pytest

from wernerqd import checks
from wernerqd import discord as qd
from wernerqd import negativity as neg
from wernerqd.werner import WernerParams

VERDICTS = []

GRID_21 = checks.p_grid(21)
GRID_101 = checks.p_grid(101)


def record(number, title, passed, detail):
    VERDICTS.append(f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} ({detail})")
    return passed


def criterion_1():
    gap, flat = checks.discord_agreement(range(2, 9), GRID_21, (32, 32), tol=1e-6, large_n=99)
    return record(1, "analytic vs numeric discord, n=2..8, 21 p, 32x32 grid", gap.passed,
                  f"max |gap|={gap.worst:.2e} < 1e-6")


def criterion_2():
    d0 = qd.discord_closed(WernerParams(2, 0.0))
    d1 = qd.discord_closed(WernerParams(2, 1.0))
    closed = qd.discord_closed(WernerParams(2, 0.5))
    numeric = qd.discord_numeric(WernerParams(2, 0.5), (32, 32)).discord
    ok = d0 == 0.0 and d1 == 1.0 and abs(closed - numeric) < 1e-9
    return record(2, "two-qubit anchor", ok,
                  f"D(2,0)={d0}, D(2,1)={d1}, D(2,0.5)={closed:.10f}, |closed-numeric|={abs(closed - numeric):.1e}")


def criterion_3():
    ns = [10, 20, 50, 100, 200]
    r = checks.limit_approach(ns, GRID_101, tol=1e-3)
    sups = [max(abs(qd.discord_gap(WernerParams(n, p))) for p in GRID_101) for n in ns]
    return record(3, "thermodynamic limit D -> p", r.passed,
                  "sup|D-p| = " + ", ".join(f"n={n}:{s:.1e}" for n, s in zip(ns, sups)))


def criterion_4():
    r = checks.threshold_bisection(range(2, 13), dp=1e-4)
    exact = neg.separability_threshold(2, exact=True) == Fraction(1, 3)
    return record(4, "separability threshold 1/(1+2^(n-1)), n=2..12, dp=1e-4", r.passed and exact,
                  f"max |bisected - formula|={r.worst:.1e}, n=2 threshold exactly 1/3: {exact}")


def criterion_5():
    r = checks.negativity_equivalence(range(2, 11), GRID_21, tol=1e-10)
    sup60 = max(abs(neg.log_negativity(WernerParams(60, p)).value - math.log2(1 + p)) for p in GRID_101)
    return record(5, "negativity closed form vs dense trace norm, n<=10; n=60 limit", r.passed and sup60 < 1e-6,
                  f"max dense gap={r.worst:.1e} < 1e-10, sup|N_L(60,p)-log2(1+p)|={sup60:.1e} < 1e-6")


def criterion_6():
    r = checks.convexity(range(2, 21), GRID_21, rel_tol=1e-4)
    return record(6, "discord convexity, n=2..20", r.passed, f"max relative FD error={r.worst:.1e} < 1e-4")


def criterion_7():
    r = checks.concavity(range(2, 21), GRID_21, rel_tol=1e-4)
    return record(7, "negativity concavity on (threshold, 1), n=2..20", r.passed,
                  f"max relative FD error={r.worst:.1e} < 1e-4")


def criterion_8():
    _, flat = checks.discord_agreement((2, 3, 4), (0.1, 0.5, 0.9), (32, 32), flatness_tol=1e-10)
    return record(8, "conditional entropy flat in (theta, phi)", flat.passed,
                  f"max spread={flat.worst:.1e} < 1e-10")


def criterion_9():
    d, n_l = checks.monotonicity_in_n(list(range(2, 21)), GRID_21)
    return record(9, "discord and N_L strictly increase with n, n=2..20", d.passed and n_l.passed,
                  f"min step discord={d.worst:.1e}, N_L={n_l.worst:.1e}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(criterion):
    passed = criterion()
    print(VERDICTS[-1])
    assert passed, VERDICTS[-1]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    for line in VERDICTS:
        print(line)
    raise SystemExit(0 if all(results) else 1)
