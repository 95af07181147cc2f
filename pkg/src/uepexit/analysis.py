"""Threshold-gain evaluation of unequal error protection.

Method 1 designs a code for a uniform channel and then searches the best
(parity, information) channel pair that the fixed code still decodes.
Method 2 designs for a given pair and then finds the best uniform channel.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import exit_bsc
from .code_model import DegreeDistribution
from .curves import Channel, GridSpec, default_grid
from .errors import DomainError, InfeasibleError
from .lp import DEFAULT_DMAX, DEFAULT_MARGIN, FEAS_TOL, LpSolution, cn_inverse, sweep_lp
from .numerics import binary_entropy


@dataclass(frozen=True)
class UepProfile:
    """Channel error probabilities of parity bits (sigma1) and information bits (sigma2)."""

    sigma1: float
    sigma2: float

    def __post_init__(self):
        for name in ("sigma1", "sigma2"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise DomainError(f"{name} = {v} must lie in [0, 1]")

    @classmethod
    def uniform(cls, sigma: float) -> "UepProfile":
        return cls(sigma, sigma)

    @property
    def is_uniform(self) -> bool:
        return self.sigma1 == self.sigma2


@dataclass(frozen=True)
class SearchSpec:
    """Pair and threshold search resolution.

    sigma1 runs over 0, step, 2*step, ... up to ``sigma1_max`` (the uniform
    baseline when left as None in Method 1); each inner search bisects to
    ``tol``.
    """

    sigma1_step: float = 0.001
    sigma1_max: float | None = None
    tol: float = 1e-4

    def __post_init__(self):
        if not (self.sigma1_step > 0 and self.tol > 0):
            raise DomainError("search step and tolerance must be positive")


def _channel_cap(ch: Channel) -> float:
    return 0.5 if ch is Channel.BSC else 1.0


class ConvergenceChecker:
    """Evaluates VN-mixture minus CN-inverse on a fixed grid for one code.

    The grid, the CN-inverse curve and, for the BSC, the extrinsic crossover
    at every grid point are computed once and reused across calls.
    """

    def __init__(self, channel, dist: DegreeDistribution, grid: GridSpec | None = None,
                 margin: float = DEFAULT_MARGIN):
        self.channel = Channel.parse(channel)
        self.dist = dist
        self.grid = grid or default_grid(self.channel)
        self.margin = margin
        self.t = self.grid.points()
        self.cn = cn_inverse(self.channel, dist.d_c, self.t)
        if self.channel is Channel.BSC:
            self.delta, _ = exit_bsc.channel_from_info(self.t)

    def _vn(self, sigma: float, d: int):
        if self.channel is Channel.BEC:
            return 1.0 - sigma * (1.0 - self.t) ** (d - 1)
        return exit_bsc._vn_info(float(sigma), self.delta, d)

    def parity_part(self, sigma1: float):
        return self.dist.a * self._vn(sigma1, 2)

    def info_part(self, sigma2: float):
        out = np.zeros_like(self.t)
        for d, frac in self.dist.fractions():
            if frac > 0:
                out = out + frac * self._vn(sigma2, d)
        return out

    def gap(self, sigma1: float, sigma2: float):
        return self.parity_part(sigma1) + self.info_part(sigma2) - self.cn

    def holds(self, sigma1: float, sigma2: float, parity=None) -> bool:
        # same feasibility tolerance as the LP, so a designed code converges at its design point
        p = self.parity_part(sigma1) if parity is None else parity
        return bool(np.all(p + self.info_part(sigma2) - self.cn >= self.margin - FEAS_TOL))


def convergence_holds(channel, dist: DegreeDistribution, profile: UepProfile,
                      grid: GridSpec | None = None, margin: float = DEFAULT_MARGIN) -> bool:
    """True iff the VN mixture exceeds the CN inverse by ``margin`` at every grid point
    (up to the LP feasibility tolerance)."""
    return ConvergenceChecker(channel, dist, grid, margin).holds(profile.sigma1, profile.sigma2)


def weighted_average(profile: UepProfile, rate: float) -> float:
    """Rate-weighted channel error probability sigma1 (1 - R) + sigma2 R."""
    return profile.sigma1 * (1.0 - rate) + profile.sigma2 * rate


def threshold_gain(new_average: float, baseline: float) -> float:
    """Percent increase of ``new_average`` over ``baseline``."""
    if not baseline > 0:
        raise DomainError("baseline must be positive")
    return 100.0 * (new_average - baseline) / baseline


def _largest_feasible(pred, lo: float, hi: float, tol: float) -> float:
    """Largest x in [lo, hi] with pred(x), given pred(lo) and monotone pred."""
    if pred(hi):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def best_uep_pair(channel, dist: DegreeDistribution, rate: float, search: SearchSpec | None = None,
                  grid: GridSpec | None = None, margin: float = DEFAULT_MARGIN,
                  sigma1_cap: float | None = None):
    """Search the (sigma1, sigma2) pair with the largest weighted average that still converges.

    Returns (UepProfile, weighted_average). Ties go to the smaller sigma1.
    """
    search = search or SearchSpec()
    chk = ConvergenceChecker(channel, dist, grid, margin)
    top = _channel_cap(chk.channel)
    cap = search.sigma1_max if search.sigma1_max is not None else sigma1_cap
    cap = top if cap is None else min(cap, top)
    if not chk.holds(0.0, 0.0):
        raise InfeasibleError("the code does not converge even on noiseless channels")
    best = None
    n_steps = int(np.floor(cap / search.sigma1_step + 1e-9))
    for k in range(n_steps + 1):
        s1 = k * search.sigma1_step
        par = chk.parity_part(s1)
        if not chk.holds(s1, s1, par):
            break
        s2 = _largest_feasible(lambda s: chk.holds(s1, s, par), s1, top, search.tol)
        prof = UepProfile(s1, s2)
        avg = weighted_average(prof, rate)
        if best is None or avg > best[1] + 1e-15:
            best = (prof, avg)
    return best


def best_uniform(channel, dist: DegreeDistribution, search: SearchSpec | None = None,
                 grid: GridSpec | None = None, margin: float = DEFAULT_MARGIN) -> float:
    """Largest sigma (to the search tolerance) with convergence at sigma1 = sigma2 = sigma."""
    search = search or SearchSpec()
    chk = ConvergenceChecker(channel, dist, grid, margin)
    if not chk.holds(0.0, 0.0):
        raise InfeasibleError("the code does not converge even on noiseless channels")
    return _largest_feasible(lambda s: chk.holds(s, s), 0.0, _channel_cap(chk.channel), search.tol)


@dataclass
class GainReport:
    channel: Channel
    method: int
    rate: float
    dist: DegreeDistribution
    baseline: float
    sigma1: float
    sigma2: float
    weighted_average: float
    gain_percent: float
    candidates: dict = field(default_factory=dict)
    rule: str = ""

    @property
    def profile(self) -> UepProfile:
        return UepProfile(self.sigma1, self.sigma2)

    def consistency_errors(self, tol: float = 1e-9) -> list:
        errs = []
        if abs(weighted_average(self.profile, self.rate) - self.weighted_average) > tol:
            errs.append("weighted_average")
        if abs(threshold_gain(self.weighted_average, self.baseline) - self.gain_percent) > tol:
            errs.append("gain_percent")
        return errs

    CSV_FIELDS = ("channel", "method", "d_c", "rate", "baseline", "sigma1", "sigma2",
                  "weighted_average", "gain_percent")

    def row(self) -> dict:
        return {"channel": self.channel.value, "method": self.method, "d_c": self.dist.d_c,
                "rate": self.rate, "baseline": self.baseline, "sigma1": self.sigma1,
                "sigma2": self.sigma2, "weighted_average": self.weighted_average,
                "gain_percent": self.gain_percent}

    def to_dict(self) -> dict:
        d = self.row()
        d["dist"] = self.dist.to_dict()
        d["rule"] = self.rule
        if self.candidates:
            d["candidates"] = {str(k): v for k, v in self.candidates.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self, header: bool = True, fmt=None) -> str:
        fmt = fmt or (lambda v: v)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=self.CSV_FIELDS, lineterminator="\n")
        if header:
            w.writeheader()
        w.writerow({k: fmt(v) for k, v in self.row().items()})
        return buf.getvalue()


# ------------------------------------------------------------ d_c selection
#
# The LP is solved for every d_c in the sweep; a rule then picks one code.
#   rate          highest rate (smallest d_c on ties)
#   capacity-rate highest rate among codes not above channel capacity
#   gain          largest Method-1 threshold gain among codes whose grid
#                 constraint binds (a slack LP yields a code far better than
#                 the design channel, so its "gain" is not a UEP effect)
#   auto          Method 1: gain on the BEC, capacity-rate on the BSC;
#                 Method 2: rate

DEFAULT_DC_SWEEP = range(4, 21)
DC_RULES = ("auto", "rate", "capacity-rate", "gain")


def capacity(channel, sigma: float) -> float:
    ch = Channel.parse(channel)
    if ch is Channel.BEC:
        return 1.0 - sigma
    return 1.0 - binary_entropy(sigma)


def binding(sol: LpSolution) -> bool:
    """True when some grid row limits the LP, i.e. the code is not trivially strong."""
    return sol.status == "optimal" and bool(sol.x[0] < 1.0 - 2.0 / sol.dist.d_c - 1e-9)


def _feasible(table: dict) -> list:
    dcs = [dc for dc in sorted(table) if table[dc].status == "optimal"]
    if not dcs:
        raise InfeasibleError(f"no feasible distribution for d_c in {sorted(table)}")
    return dcs


def select_by_rate(table: dict, cap: float | None = None) -> int:
    dcs = _feasible(table)
    if cap is not None:
        dcs = [dc for dc in dcs if table[dc].rate <= cap]
        if not dcs:
            raise InfeasibleError("every feasible code has a rate above channel capacity")
    best = dcs[0]
    for dc in dcs[1:]:
        if table[dc].rate > table[best].rate + 1e-12:
            best = dc
    return best


def _method1_pairs(ch, table, dcs, sigma_uniform, search, grid, margin) -> dict:
    out = {}
    for dc in dcs:
        sol = table[dc]
        out[dc] = best_uep_pair(ch, sol.dist, sol.rate, search, grid, margin,
                                sigma1_cap=sigma_uniform)
    return out


def method1(channel, sigma_uniform: float, d_c=DEFAULT_DC_SWEEP, d_max: int = DEFAULT_DMAX,
            grid: GridSpec | None = None, margin: float = DEFAULT_MARGIN,
            search: SearchSpec | None = None, rule: str = "auto") -> GainReport:
    """Design for the uniform channel, then find the best UEP pair for that code."""
    ch = Channel.parse(channel)
    if not sigma_uniform > 0:
        raise DomainError("uniform baseline must be positive")
    if rule not in DC_RULES:
        raise DomainError(f"unknown d_c rule {rule!r}")
    grid = grid or default_grid(ch)
    search = search or SearchSpec()
    table = sweep_lp(ch, sigma_uniform, sigma_uniform, d_c, d_max, grid, margin)
    if rule == "auto":
        rule = "gain" if ch is Channel.BEC else "capacity-rate"
    pairs = {}
    if rule == "gain":
        dcs = [dc for dc in _feasible(table) if binding(table[dc])]
        if not dcs:
            raise InfeasibleError("no swept d_c gives a binding convergence constraint")
        pairs = _method1_pairs(ch, table, dcs, sigma_uniform, search, grid, margin)
        dc = max(dcs, key=lambda k: (pairs[k][1], -k))
    else:
        cap = capacity(ch, sigma_uniform) if rule == "capacity-rate" else None
        dc = select_by_rate(table, cap)
        pairs = _method1_pairs(ch, table, [dc], sigma_uniform, search, grid, margin)
    sol = table[dc]
    prof, avg = pairs[dc]
    cands = {k: {"rate": v.rate, "binding": binding(v)} for k, v in table.items()
             if v.status == "optimal"}
    for k, (pk, ak) in pairs.items():
        cands[k]["gain_percent"] = threshold_gain(ak, sigma_uniform)
    return GainReport(ch, 1, sol.rate, sol.dist, sigma_uniform, prof.sigma1, prof.sigma2, avg,
                      threshold_gain(avg, sigma_uniform), cands, rule)


def method2(channel, profile: UepProfile, d_c=DEFAULT_DC_SWEEP, d_max: int = DEFAULT_DMAX,
            grid: GridSpec | None = None, margin: float = DEFAULT_MARGIN,
            search: SearchSpec | None = None, rule: str = "auto") -> GainReport:
    """Design for the UEP pair, then find the best uniform channel for that code."""
    ch = Channel.parse(channel)
    if not profile.sigma1 < profile.sigma2:
        raise DomainError("method 2 needs sigma1 < sigma2")
    if rule not in ("auto", "rate"):
        raise DomainError("method 2 supports the 'rate' rule only")
    grid = grid or default_grid(ch)
    search = search or SearchSpec()
    table = sweep_lp(ch, profile.sigma1, profile.sigma2, d_c, d_max, grid, margin)
    dc = select_by_rate(table)
    sol = table[dc]
    uni = best_uniform(ch, sol.dist, search, grid, margin)
    if not uni > 0:
        raise InfeasibleError("the designed code has a zero uniform threshold")
    avg = weighted_average(profile, sol.rate)
    cands = {k: {"rate": v.rate, "binding": binding(v)} for k, v in table.items()
             if v.status == "optimal"}
    return GainReport(ch, 2, sol.rate, sol.dist, uni, profile.sigma1, profile.sigma2, avg,
                      threshold_gain(avg, uni), cands, "rate")
