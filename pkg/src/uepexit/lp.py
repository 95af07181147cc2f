"""The degree-distribution linear program and the d_c sweep around it.

Decision vector x = (b, lambda_3, ..., lambda_dmax). The program is

    maximize   b/2 + sum_i lambda_i / i
    subject to b + sum_i lambda_i = 1 - 2/d_c
               a*V_2(sigma1, t) + b*V_2(sigma2, t) + sum_i lambda_i*V_i(sigma2, t)
                   >= CN^{-1}(t) + margin      for every grid point t
               0 <= x <= 1

where V_d is the degree-d VN curve of the channel and a = 2/d_c.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import exit_bec, exit_bsc
from .code_model import DegreeDistribution, code_rate, validate_distribution
from .curves import Channel, GridSpec, default_grid
from .errors import DomainError, InfeasibleError
from .simplex import maximize

DEFAULT_DMAX = 30
DEFAULT_MARGIN = 1e-6
MAX_DMAX = 64
FEAS_TOL = 1e-9


def _check_prob(x, name, hi=1.0):
    if not (0.0 <= x <= hi):
        raise DomainError(f"{name} = {x} must lie in [0, {hi}]")


def vn_rows(channel, sigma, degrees, t):
    """VN curve values V_d(sigma, t), one row per degree."""
    ch = Channel.parse(channel)
    t = np.asarray(t, dtype=float)
    if ch is Channel.BEC:
        return np.array([1.0 - sigma * (1.0 - t) ** (d - 1) for d in degrees])
    return exit_bsc.bsc_vn_exit_rows(sigma, degrees, t)


def cn_inverse(channel, d_c, t):
    ch = Channel.parse(channel)
    if ch is Channel.BEC:
        return exit_bec.bec_cn_exit_inverse(d_c, t)
    return exit_bsc.bsc_cn_exit_inverse(d_c, t)


def vn_uep(channel, sigma1, sigma2, dist, t):
    ch = Channel.parse(channel)
    if ch is Channel.BEC:
        return exit_bec.bec_vn_exit_uep(sigma1, sigma2, dist, t)
    return exit_bsc.bsc_vn_exit_uep(sigma1, sigma2, dist, t)


@dataclass
class LpProblem:
    channel: Channel
    sigma1: float
    sigma2: float
    d_c: int
    d_max: int
    grid: GridSpec
    margin: float
    objective: np.ndarray      # c, maximised
    eq_row: np.ndarray
    eq_rhs: float
    ineq_lhs: np.ndarray       # G, with G x >= h
    ineq_rhs: np.ndarray       # h
    upper: float = 1.0

    @property
    def degrees(self):
        return list(range(2, self.d_max + 1))

    def to_dict(self) -> dict:
        return {
            "channel": self.channel.value,
            "sigma1": self.sigma1,
            "sigma2": self.sigma2,
            "d_c": self.d_c,
            "d_max": self.d_max,
            "grid": self.grid.to_dict(),
            "margin": self.margin,
            "variables": ["b"] + [f"lambda_{i}" for i in range(3, self.d_max + 1)],
            "objective": self.objective.tolist(),
            "equality": {"row": self.eq_row.tolist(), "rhs": self.eq_rhs},
            "rows": {"lhs": self.ineq_lhs.tolist(), "rhs": self.ineq_rhs.tolist(), "sense": ">="},
            "bounds": [0.0, self.upper],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "LpProblem":
        return cls(Channel.parse(d["channel"]), float(d["sigma1"]), float(d["sigma2"]),
                   int(d["d_c"]), int(d["d_max"]), GridSpec.from_dict(d["grid"]),
                   float(d["margin"]), np.array(d["objective"], dtype=float),
                   np.array(d["equality"]["row"], dtype=float), float(d["equality"]["rhs"]),
                   np.array(d["rows"]["lhs"], dtype=float), np.array(d["rows"]["rhs"], dtype=float),
                   float(d["bounds"][1]))


@dataclass
class LpSolution:
    status: str
    problem: LpProblem | None = None
    dist: DegreeDistribution | None = None
    objective_value: float | None = None
    x: np.ndarray | None = None
    reduced_costs: np.ndarray | None = None
    slacks: np.ndarray | None = None
    duals: np.ndarray | None = None
    eq_dual: float | None = None
    bound_duals: np.ndarray | None = None
    iterations: int = 0

    @property
    def rate(self) -> float | None:
        return None if self.dist is None else code_rate(self.dist)

    def to_dict(self) -> dict:
        d = {"status": self.status, "iterations": self.iterations}
        if self.status == "optimal":
            d.update({
                "d_c": self.dist.d_c,
                "rate": self.rate,
                "objective_value": self.objective_value,
                "dist": self.dist.to_dict(),
                "x": self.x.tolist(),
                "certificate": {
                    "reduced_costs": self.reduced_costs.tolist(),
                    "slacks": self.slacks.tolist(),
                    "row_duals": self.duals.tolist(),
                    "equality_dual": self.eq_dual,
                    "bound_duals": self.bound_duals.tolist(),
                },
            })
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def build_lp(channel, sigma1: float, sigma2: float, d_c: int, d_max: int = DEFAULT_DMAX,
             grid: GridSpec | None = None, margin: float = DEFAULT_MARGIN) -> LpProblem:
    ch = Channel.parse(channel)
    hi = 0.5 if ch is Channel.BSC else 1.0
    _check_prob(sigma1, "sigma1", hi)
    _check_prob(sigma2, "sigma2", hi)
    if int(d_c) != d_c or d_c < 4:
        raise DomainError("d_c must be an integer >= 4")
    if int(d_max) != d_max or not (3 <= d_max <= MAX_DMAX):
        raise DomainError(f"d_max must be an integer in [3, {MAX_DMAX}]")
    if not (margin > 0 and np.isfinite(margin)):
        raise DomainError("margin must be a positive finite number")
    grid = grid or default_grid(ch)
    d_c, d_max = int(d_c), int(d_max)
    t = grid.points()
    degrees = list(range(2, d_max + 1))
    a = 2.0 / d_c
    G = vn_rows(ch, sigma2, degrees, t).T
    parity = a * vn_rows(ch, sigma1, [2], t)[0]
    h = cn_inverse(ch, d_c, t) + margin - parity
    c = np.array([1.0 / d for d in degrees])
    return LpProblem(ch, float(sigma1), float(sigma2), d_c, d_max, grid, float(margin),
                     c, np.ones(len(degrees)), 1.0 - a, G, h)


def solve_lp(problem: LpProblem, seed_rows: int = 40, batch: int = 24) -> LpSolution:
    """Solve by row generation over the grid inequalities.

    Neighbouring grid rows are nearly parallel, so only a handful are ever
    binding. Starting from an evenly spaced subset, the most violated rows are
    added until the restricted optimum satisfies every row; that point is then
    optimal for the full program, and the restricted duals padded with zeros
    certify it.
    """
    G, h = problem.ineq_lhs, problem.ineq_rhs
    m = len(h)
    active = np.zeros(m, dtype=bool)
    active[np.unique(np.linspace(0, m - 1, min(seed_rows, m)).astype(int))] = True
    iterations = 0
    while True:
        idx = np.flatnonzero(active)
        res = maximize(problem.objective, A_ub=-G[idx], b_ub=-h[idx],
                       A_eq=problem.eq_row[None, :], b_eq=[problem.eq_rhs], upper=problem.upper)
        iterations += res.iterations
        if res.status != "optimal":
            return LpSolution(res.status, problem, iterations=iterations)
        x = np.clip(res.x, 0.0, problem.upper)
        slacks = G @ x - h
        viol = np.flatnonzero((slacks < -0.1 * FEAS_TOL) & ~active)
        if len(viol) == 0:
            break
        worst = viol[np.argsort(slacks[viol])[:batch]]
        active[worst] = True
    duals = np.zeros(m)
    duals[idx] = res.duals_ub
    dist = DegreeDistribution.from_vector(problem.d_c, x)
    return LpSolution("optimal", problem, dist, float(problem.objective @ x), x,
                      res.reduced_costs, slacks, duals, float(res.duals_eq[0]),
                      res.duals_upper, iterations)


def certificate_errors(sol: LpSolution, tol: float = FEAS_TOL) -> list:
    """Return the list of failed optimality checks (empty when the solution is certified)."""
    p = sol.problem
    errs = []
    x = sol.x
    if np.any(x < -tol) or np.any(x > p.upper + tol):
        errs.append("bounds")
    slack = p.ineq_lhs @ x - p.ineq_rhs
    if slack.min() < -tol:
        errs.append(f"row slack {slack.min():.3e}")
    if abs(p.eq_row @ x - p.eq_rhs) > tol:
        errs.append("equality residual")
    if np.max(sol.reduced_costs) > tol:
        errs.append(f"reduced cost {np.max(sol.reduced_costs):.3e}")
    # dual feasibility and zero duality gap, in the <= form used by the solver
    y, w, v = sol.duals, sol.bound_duals, sol.eq_dual
    if np.any(y < -tol) or np.any(w < -tol):
        errs.append("dual sign")
    lhs = -p.ineq_lhs.T @ y + p.eq_row * v + w
    if np.any(lhs < p.objective - 1e-7):
        errs.append("dual feasibility")
    dual_obj = -p.ineq_rhs @ y + p.eq_rhs * v + p.upper * w.sum()
    if abs(dual_obj - sol.objective_value) > 1e-7:
        errs.append(f"duality gap {dual_obj - sol.objective_value:.3e}")
    if not validate_distribution(sol.dist, tol=1e-9):
        errs.append("distribution invalid")
    return errs


@dataclass
class SweepResult:
    """Outcome of an LP sweep over d_c values."""

    dist: DegreeDistribution
    rate: float
    d_c: int
    solution: LpSolution
    table: dict = field(default_factory=dict)   # d_c -> LpSolution

    def __iter__(self):
        yield self.dist
        yield self.rate

    def feasible(self):
        return {d: s for d, s in self.table.items() if s.status == "optimal"}


def parse_dc(d_c):
    """Accept an int, an iterable of ints, or a 'LO..HI' string."""
    if isinstance(d_c, str):
        if ".." in d_c:
            lo, hi = d_c.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(d_c)]
    if isinstance(d_c, (int, np.integer)):
        return [int(d_c)]
    return [int(v) for v in d_c]


def sweep_lp(channel, sigma1, sigma2, d_c, d_max=DEFAULT_DMAX, grid=None,
             margin=DEFAULT_MARGIN) -> dict:
    out = {}
    for dc in parse_dc(d_c):
        out[dc] = solve_lp(build_lp(channel, sigma1, sigma2, dc, d_max, grid, margin))
    return out


def optimize_degree_distribution(channel, sigma1, sigma2, d_c, d_max=DEFAULT_DMAX,
                                 grid=None, margin=DEFAULT_MARGIN) -> SweepResult:
    """Solve one LP per d_c and keep the highest-rate distribution (smallest d_c on ties)."""
    table = sweep_lp(channel, sigma1, sigma2, d_c, d_max, grid, margin)
    best = None
    for dc in sorted(table):
        s = table[dc]
        if s.status != "optimal":
            continue
        if best is None or s.rate > best.rate + 1e-12:
            best = s
    if best is None:
        raise InfeasibleError(
            f"no feasible distribution for d_c in {sorted(table)} at sigma=({sigma1}, {sigma2})")
    return SweepResult(best.dist, best.rate, best.dist.d_c, best, table)
