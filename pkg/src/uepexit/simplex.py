"""Dense tableau simplex for small maximisation problems.

    maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  0 <= x <= upper

Finite upper bounds become explicit rows. Each equality row starts with its
own artificial column, and every inequality row with a negative right side is
covered by one shared auxiliary column; phase one drives all of them to
zero. A single auxiliary keeps phase one short even when most inequality rows
start violated.

Pricing is Dantzig (largest reduced cost). After a run of degenerate pivots
the solver switches permanently to Bland's smallest-index rule, which cannot
cycle, so termination is guaranteed. The tableau is rebuilt from the
original data every few dozen pivots and before optimality is declared.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import LpNumericalError

OPT_TOL = 1e-10
ELIG_TOL = 1e-9
TINY_PIVOT = 1e-12
MAX_SMALL_PIVOTS = 25
DEGENERATE_RUN = 50
REFACTOR_EVERY = 64


@dataclass
class SimplexResult:
    status: str
    x: np.ndarray | None = None
    objective: float | None = None
    reduced_costs: np.ndarray | None = None   # c_j - y.A_j for structural columns
    duals_ub: np.ndarray | None = None        # >= 0, one per A_ub row
    duals_eq: np.ndarray | None = None        # free, one per A_eq row
    duals_upper: np.ndarray | None = None     # >= 0, one per variable bound
    iterations: int = 0
    bland: bool = False
    basis: list = field(default_factory=list)


class _Tableau:
    def __init__(self, rows: np.ndarray, rhs: np.ndarray, n_struct: int, m_eq: int):
        r, _ = rows.shape
        m_ub = r - m_eq
        self.n = n_struct
        self.r = r
        # columns: structural | slacks (ub rows) | artificials (eq rows) | auxiliary | rhs
        t = np.zeros((r + 1, n_struct + r + 2))
        t[:r, :n_struct] = rows
        t[:r, n_struct:n_struct + r] = np.eye(r)
        t[:m_ub, n_struct + r] = -1.0
        t[:r, -1] = rhs
        self.t = t
        self.orig = t[:r].copy()
        self.cost = np.zeros(n_struct + r + 1)
        self.aux = n_struct + r
        self.basis = list(range(n_struct, n_struct + r))
        self.iterations = 0
        self.bland = False
        self._degenerate = 0
        self._small = 0

    def pivot(self, i: int, j: int):
        t = self.t
        p = t[i, j]
        t[i] /= p
        col = t[:, j].copy()
        col[i] = 0.0
        t -= np.outer(col, t[i])
        t[:, j] = 0.0
        t[i, j] = 1.0
        self.basis[i] = j
        self.iterations += 1
        if self.iterations % REFACTOR_EVERY == 0:
            self.refactor()

    def refactor(self):
        """Rebuild the tableau from the original rows and the current basis."""
        basis_mat = self.orig[:, self.basis]
        try:
            self.t[:-1] = np.linalg.solve(basis_mat, self.orig)
        except np.linalg.LinAlgError:
            raise LpNumericalError("singular basis during refactorisation") from None
        self.t[:-1, self.basis] = np.eye(self.r)
        self.set_objective(self.cost)

    def set_objective(self, cost: np.ndarray):
        """Load reduced costs cost - c_B B^{-1} A into the last row."""
        self.cost = cost
        cb = cost[self.basis]
        self.t[-1, :-1] = cost - cb @ self.t[:-1, :-1]
        self.t[-1, -1] = -cb @ self.t[:-1, -1]

    def run(self, allowed: np.ndarray, max_iter: int) -> str:
        """Pivot to optimality, confirming the final basis on a fresh factorisation."""
        while True:
            status = self._run(allowed, max_iter)
            if status != "optimal":
                return status
            before = self.iterations
            self.refactor()
            if self._run(allowed, max_iter) == "optimal" and self.iterations == before:
                return "optimal"

    def _run(self, allowed: np.ndarray, max_iter: int) -> str:
        t = self.t
        while True:
            if self.iterations > max_iter:
                raise LpNumericalError("iteration limit reached")
            red = np.where(allowed, t[-1, :-1], -np.inf)
            if self.bland:
                cand = np.flatnonzero(red > OPT_TOL)
                if len(cand) == 0:
                    return "optimal"
                j = int(cand[0])
            else:
                j = int(np.argmax(red))
                if red[j] <= OPT_TOL:
                    return "optimal"
            col = t[:-1, j]
            pos = col > ELIG_TOL
            if not pos.any():
                pos = col > TINY_PIVOT
                if not pos.any():
                    return "unbounded"
                self._small += 1
                if self._small > MAX_SMALL_PIVOTS:
                    raise LpNumericalError(
                        f"{self._small} pivots with magnitude below {ELIG_TOL:g}")
            ratios = np.full(self.r, np.inf)
            ratios[pos] = t[:-1, -1][pos] / col[pos]
            best = ratios.min()
            tied = np.flatnonzero(ratios <= best + 1e-12 * (1.0 + abs(best)))
            if self.bland:
                i = int(min(tied, key=lambda k: self.basis[k]))
            else:
                # largest pivot among ties for stability
                i = int(tied[np.argmax(col[tied])])
            if best <= 1e-12:
                self._degenerate += 1
                if self._degenerate >= DEGENERATE_RUN:
                    self.bland = True
            else:
                self._degenerate = 0
            self.pivot(i, j)


def maximize(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, upper=None,
             max_iter: int = 50000) -> SimplexResult:
    c = np.asarray(c, dtype=float)
    n = len(c)
    blocks, rhs = [], []
    m_ub = m_eq = 0
    if A_ub is not None:
        A_ub = np.atleast_2d(np.asarray(A_ub, dtype=float))
        m_ub = A_ub.shape[0]
        blocks.append(A_ub)
        rhs.append(np.asarray(b_ub, dtype=float).ravel())
    bounded = np.zeros(0, dtype=int)
    if upper is not None:
        upper = np.broadcast_to(np.asarray(upper, dtype=float), (n,))
        bounded = np.flatnonzero(np.isfinite(upper))
        e = np.zeros((len(bounded), n))
        e[np.arange(len(bounded)), bounded] = 1.0
        blocks.append(e)
        rhs.append(upper[bounded])
    sign = np.ones(0)
    if A_eq is not None:
        A_eq = np.atleast_2d(np.asarray(A_eq, dtype=float))
        m_eq = A_eq.shape[0]
        beq = np.asarray(b_eq, dtype=float).ravel()
        sign = np.where(beq < 0, -1.0, 1.0)
        blocks.append(A_eq * sign[:, None])
        rhs.append(beq * sign)
    if not blocks:
        raise ValueError("problem has no constraints")
    rows = np.vstack(blocks)
    b = np.concatenate(rhs)
    if not (np.all(np.isfinite(rows)) and np.all(np.isfinite(b)) and np.all(np.isfinite(c))):
        raise ValueError("problem data must be finite")

    r = rows.shape[0]
    m_in = r - m_eq
    tab = _Tableau(rows, b, n, m_eq)
    ncols = n + r + 1
    aux = tab.aux
    art = np.arange(n + m_in, n + r)
    barred = np.zeros(ncols, dtype=bool)
    barred[art] = True
    barred[aux] = True

    # phase one: maximise -(aux + sum of artificials)
    if m_eq or (m_in and b[:m_in].min() < 0):
        cost1 = np.zeros(ncols)
        cost1[barred] = -1.0
        tab.set_objective(cost1)
        if m_in and b[:m_in].min() < 0:
            tab.pivot(int(np.argmin(b[:m_in])), aux)
        tab.run(np.ones(ncols, dtype=bool), max_iter)
        if -tab.t[-1, -1] < -1e-9:
            return SimplexResult("infeasible", iterations=tab.iterations, bland=tab.bland)
        # pivot zero-level auxiliaries out of the basis where the row allows it
        for i in range(r):
            if barred[tab.basis[i]]:
                row = np.where(barred, 0.0, np.abs(tab.t[i, :-1]))
                j = int(np.argmax(row))
                if row[j] > ELIG_TOL:
                    tab.pivot(i, j)

    cost2 = np.zeros(ncols)
    cost2[:n] = c
    tab.set_objective(cost2)
    status = tab.run(~barred, max_iter)
    if status == "unbounded":
        return SimplexResult("unbounded", iterations=tab.iterations, bland=tab.bland)

    sol = np.zeros(ncols)
    sol[tab.basis] = tab.t[:-1, -1]
    x = sol[:n].copy()
    # the reduced cost of a row's unit column is minus that row's dual
    y = -tab.t[-1, n:n + r]
    y_in = np.maximum(y[:m_in], 0.0)
    duals_ub = y_in[:m_ub]
    duals_upper = np.zeros(n)
    duals_upper[bounded] = y_in[m_ub:]
    duals_eq = y[m_in:] * sign
    red = tab.t[-1, :n].copy()
    return SimplexResult("optimal", x=x, objective=float(c @ x), reduced_costs=red,
                         duals_ub=duals_ub, duals_eq=duals_eq, duals_upper=duals_upper,
                         iterations=tab.iterations, bland=tab.bland, basis=list(tab.basis))
