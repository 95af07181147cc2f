"""Acceptance criteria, one printed PASS/FAIL line each.

Run under pytest (``pytest -s`` shows the lines) or directly with
``python3 tests/test_acceptance.py``.
"""
import functools
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lp_checks import perturbation_gain  # noqa: E402
from uepexit import published  # noqa: E402
from uepexit.analysis import UepProfile, method1, method2, threshold_gain, weighted_average  # noqa: E402
from uepexit.code_model import (DegreeDistribution, build_ra_parity_check,  # noqa: E402
                                check_diffusion_property, has_dual_diagonal_j)
from uepexit.curves import GridSpec  # noqa: E402
from uepexit.exit_bec import bec_cn_exit, bec_cn_exit_inverse  # noqa: E402
from uepexit.exit_bsc import (bsc_cn_exit, bsc_cn_exit_inverse, bsc_cn_extrinsic_info,  # noqa: E402
                              bsc_cn_info_oracle, bsc_vn_extrinsic_info, bsc_vn_info_oracle)
from uepexit.lp import build_lp, certificate_errors, solve_lp  # noqa: E402
from uepexit.numerics import binary_entropy, inverse_binary_entropy  # noqa: E402


def _line(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok, detail


@functools.lru_cache(maxsize=None)
def _m1(channel, sigma):
    t0 = time.perf_counter()
    rep = method1(channel, sigma)
    return rep, time.perf_counter() - t0


@functools.lru_cache(maxsize=None)
def _m2(channel, s1, s2):
    t0 = time.perf_counter()
    rep = method2(channel, UepProfile(s1, s2))
    return rep, time.perf_counter() - t0


# ------------------------------------------------------------ criteria


def crit_gain_arithmetic():
    t0 = time.perf_counter()
    worst_avg = worst_gain = 0.0
    rows = published.BEC_METHOD1 + published.BEC_METHOD2 + published.BSC_METHOD1
    for r in rows:
        avg = weighted_average(UepProfile(r.sigma1, r.sigma2), r.rate)
        gain = threshold_gain(avg, r.uniform)
        worst_avg = max(worst_avg, abs(avg - r.average))
        worst_gain = max(worst_gain, abs(gain - r.gain))
    dt = time.perf_counter() - t0
    ok = worst_avg <= 5e-4 and worst_gain <= 0.15 and dt < 1.0
    return _line("gain arithmetic", ok, f"{len(rows)} rows, max |d avg| {worst_avg:.2e}, "
                 f"max |d gain| {worst_gain:.3f} pp, {dt:.3f} s")


def crit_vn_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    for dv in range(1, 7):
        for eps in np.linspace(0.0, 1.0, 7):
            for delta in np.linspace(0.0, 0.5, 7):
                worst = max(worst, abs(bsc_vn_extrinsic_info(eps, delta, dv)
                                       - bsc_vn_info_oracle(eps, delta, dv)))
    dt = time.perf_counter() - t0
    return _line("VN closed form vs enumeration", worst <= 1e-10 and dt < 5.0,
                 f"d_v 1..6 on 7x7 grid, max error {worst:.2e}, {dt:.2f} s")


def crit_cn_oracle():
    t0 = time.perf_counter()
    worst = 0.0
    for dc in range(2, 9):
        for delta in np.linspace(0.0, 0.5, 9):
            worst = max(worst, abs(bsc_cn_extrinsic_info(delta, dc) - bsc_cn_info_oracle(delta, dc)))
    dt = time.perf_counter() - t0
    return _line("CN closed form vs enumeration", worst <= 1e-10 and dt < 5.0,
                 f"d_c 2..8 at 9 deltas, max error {worst:.2e}, {dt:.2f} s")


def crit_round_trips():
    t = GridSpec(1000).points()
    bec = max(np.max(np.abs(bec_cn_exit(dc, bec_cn_exit_inverse(dc, t)) - t)) for dc in (3, 4, 6, 8, 15))
    bsc = max(np.max(np.abs(bsc_cn_exit(dc, bsc_cn_exit_inverse(dc, t)) - t)) for dc in (3, 4, 6, 8, 15))
    y = np.linspace(0.0, 1.0, 1000)
    hb = float(np.max(np.abs(binary_entropy(inverse_binary_entropy(y)) - y)))
    ok = bec <= 1e-12 and bsc <= 1e-8 and hb <= 1e-10
    return _line("inverse round trips", ok,
                 f"BEC CN {bec:.1e}, BSC CN {bsc:.1e}, H(H^-1(y)) {hb:.1e}")


def crit_area():
    n = 100_000
    mid = (np.arange(n) + 0.5) / n
    errs = {dc: abs(float(np.mean(bec_cn_exit(dc, mid))) - 1.0 / dc) for dc in (3, 4, 8)}
    worst = max(errs.values())
    return _line("BEC CN area", worst <= 1e-4, f"max |area - 1/d_c| {worst:.1e} over d_c 3, 4, 8")


def crit_method1():
    checks = [("bec", 0.28, 0.62, 8.0), ("bsc", 0.028, 0.78, 10.0), ("bsc", 0.082, None, 22.0)]
    ok, parts = True, []
    for ch, s, rmin, gmin in checks:
        rep, dt = _m1(ch, s)
        good = (rmin is None or rep.rate >= rmin) and rep.gain_percent >= gmin and dt <= 600
        ok &= good
        parts.append(f"{ch} {s}: d_c {rep.dist.d_c} rate {rep.rate:.4f} gain "
                     f"{rep.gain_percent:.2f}% ({dt:.1f} s)")
    return _line("end-to-end method 1", ok, "; ".join(parts))


def crit_method2():
    rep, dt = _m2("bec", 0.05, 0.5)
    ok = rep.rate >= 0.62 and rep.gain_percent >= 13.0 and dt <= 600
    return _line("end-to-end method 2", ok, f"bec (0.05, 0.5): d_c {rep.dist.d_c} rate "
                 f"{rep.rate:.4f} gain {rep.gain_percent:.2f}% ({dt:.1f} s)")


def crit_trend():
    reps = [_m1("bec", r.uniform)[0] for r in published.BEC_METHOD1]
    pts = sorted((rep.rate, rep.gain_percent) for rep in reps)
    gains = [g for _, g in pts]
    ok = all(a >= b - 1e-9 for a, b in zip(gains, gains[1:]))
    return _line("gain trend", ok, ", ".join(f"R {r:.4f} -> {g:.2f}%" for r, g in pts))


def crit_lp_soundness():
    cases = [("bec", 0.28, 0.28, 6), ("bec", 0.28, 0.28, 12), ("bec", 0.05, 0.5, 7),
             ("bsc", 0.028, 0.028, 17), ("bsc", 0.082, 0.082, 7), ("bsc", 0.001, 0.039, 9)]
    ok, worst_slack, worst_gain = True, np.inf, -np.inf
    for ch, s1, s2, dc in cases:
        sol = solve_lp(build_lp(ch, s1, s2, dc))
        if sol.status != "optimal":
            ok = False
            continue
        worst_slack = min(worst_slack, float(sol.slacks.min()))
        gain, feasible = perturbation_gain(sol, trials=1000)
        worst_gain = max(worst_gain, gain)
        ok &= not certificate_errors(sol) and sol.slacks.min() >= -1e-9 and gain <= 1e-12
        ok &= feasible > 0
    for dc in (4, 6, 9, 12):
        sol = solve_lp(build_lp("bec", 0.0, 0.0, dc))
        forced = sol.x[0] == 1 - 2 / dc and np.all(sol.x[1:] == 0)
        ok &= bool(forced) and sol.rate == pytest.approx(1 - (1 / dc) / 0.5, abs=1e-15)
    return _line("LP soundness", ok, f"{len(cases)} LPs, min slack {worst_slack:.1e}, best "
                 f"perturbation gain {worst_gain:.1e}; noiseless b = 1 - 2/d_c exact")


def crit_structure():
    ok, count = True, 0
    for dc in (4, 6, 8):
        rest = 1 - 2 / dc
        dist = DegreeDistribution(dc, 2 / dc, 0.4 * rest, {3: 0.3 * rest, 6: 0.3 * rest})
        for n in (64, 512):
            for seed in range(3):
                mat = build_ra_parity_check(dist, n, seed=seed)
                ok &= has_dual_diagonal_j(mat.h) and check_diffusion_property(mat)
                count += 1
    return _line("RA structure", ok, f"{count} matrices, d_c 4/6/8, n 64/512")


CRITERIA = [crit_gain_arithmetic, crit_vn_oracle, crit_cn_oracle, crit_round_trips, crit_area,
            crit_method1, crit_method2, crit_trend, crit_lp_soundness, crit_structure]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__[5:])
def test_criterion(criterion):
    ok, detail = criterion()
    assert ok, detail


if __name__ == "__main__":
    results = [c()[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
