"""Degree distributions of RA codes, the rate formula, and finite H = [J P] matrices."""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, DomainError

SUM_TOL = 1e-10


@dataclass
class DegreeDistribution:
    """Edge-perspective VN degree fractions of an RA code with check degree d_c.

    ``a`` is the fraction on degree-2 parity VNs, ``b`` on degree-2 information
    VNs, and ``lambdas[i]`` on degree-i information VNs (i >= 3).
    """

    d_c: int
    a: float
    b: float
    lambdas: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lambdas = {int(i): float(v) for i, v in sorted(self.lambdas.items())}

    @classmethod
    def uniform_protection_start(cls, d_c: int) -> "DegreeDistribution":
        """All non-parity mass on degree-2 information nodes."""
        return cls(d_c, 2.0 / d_c, 1.0 - 2.0 / d_c, {})

    @classmethod
    def from_vector(cls, d_c: int, x, tol: float = 0.0) -> "DegreeDistribution":
        """Build from the LP variable vector (b, lambda_3, ..., lambda_dmax)."""
        x = np.asarray(x, dtype=float)
        lam = {i + 3: float(v) for i, v in enumerate(x[1:]) if v > tol}
        return cls(d_c, 2.0 / d_c, float(x[0]), lam)

    @property
    def d_max(self) -> int:
        live = [i for i, v in self.lambdas.items() if v > 0]
        return max(live) if live else 2

    def fractions(self):
        """(degree, fraction) pairs for the information-node branches, degree 2 first."""
        out = [(2, self.b)]
        out.extend(sorted(self.lambdas.items()))
        return out

    def total(self) -> float:
        return self.a + self.b + sum(self.lambdas.values())

    def objective(self) -> float:
        return self.b / 2.0 + sum(v / i for i, v in self.lambdas.items())

    def to_dict(self) -> dict:
        return {
            "d_c": int(self.d_c),
            "a": float(self.a),
            "b": float(self.b),
            "lambdas": {str(i): float(v) for i, v in self.lambdas.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DegreeDistribution":
        return cls(int(d["d_c"]), float(d["a"]), float(d["b"]),
                   {int(k): float(v) for k, v in d.get("lambdas", {}).items()})


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_distribution(dist: DegreeDistribution, tol: float = SUM_TOL) -> ValidationResult:
    """Check d_c >= 4, a = 2/d_c, nonnegativity, and unit total, in that order."""
    if int(dist.d_c) != dist.d_c or dist.d_c < 4:
        return ValidationResult(False, f"d_c must be an integer >= 4, got {dist.d_c}")
    if abs(dist.a - 2.0 / dist.d_c) > tol:
        return ValidationResult(False, f"a = {dist.a} differs from 2/d_c = {2.0 / dist.d_c}")
    if dist.b < 0:
        return ValidationResult(False, f"b = {dist.b} is negative")
    for i, v in dist.lambdas.items():
        if i < 3:
            return ValidationResult(False, f"lambda degree {i} must be >= 3")
        if v < 0:
            return ValidationResult(False, f"lambda_{i} = {v} is negative")
    s = dist.total()
    if abs(s - 1.0) > tol:
        return ValidationResult(False, f"edge fractions sum to {s}, not 1")
    return ValidationResult(True, "")


def code_rate(dist: DegreeDistribution) -> float:
    """R = 1 - (1/d_c) / (1/d_c + b/2 + sum_i lambda_i / i)."""
    inv = 1.0 / dist.d_c
    den = inv + dist.objective()
    if den <= 0:
        raise DomainError("rate denominator is not positive")
    return 1.0 - inv / den


def rate_from_objective(d_c: int, objective: float) -> float:
    inv = 1.0 / d_c
    return 1.0 - inv / (inv + objective)


# ---------------------------------------------------------------- finite H


@dataclass
class RaParityCheckMatrix:
    """Dense binary H = [J P] with J the m x (m-1) dual-diagonal block.

    Column m-1 (the first column of P) is the weight-2 column that closes the
    accumulator; columns m..n-1 are the information nodes.
    """

    h: np.ndarray
    d_c: int

    @property
    def rows(self) -> int:
        return self.h.shape[0]

    @property
    def cols(self) -> int:
        return self.h.shape[1]

    @property
    def info_columns(self) -> range:
        return range(self.rows, self.cols)

    def implied_distribution(self) -> DegreeDistribution:
        m = self.rows
        deg = self.h.sum(axis=0).astype(int)
        edges = float(deg.sum())
        info = deg[m:]
        b = 2.0 * np.count_nonzero(info == 2) / edges
        lam = {}
        for d in np.unique(info):
            if d >= 3:
                lam[int(d)] = d * np.count_nonzero(info == d) / edges
        a = 2.0 * m / edges
        return DegreeDistribution(self.d_c, a, b, lam)


def has_dual_diagonal_j(h: np.ndarray) -> bool:
    """True iff the left m x (m-1) block has ones exactly on its diagonal and subdiagonal."""
    h = np.asarray(h)
    m = h.shape[0]
    if h.shape[1] < m or m < 2:
        return False
    want = np.zeros((m, m - 1), dtype=h.dtype)
    j = np.arange(m - 1)
    want[j, j] = 1
    want[j + 1, j] = 1
    return bool(np.array_equal(h[:, : m - 1], want))


def _largest_remainder(total: int, weights: np.ndarray) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    ideal = total * w / w.sum()
    base = np.floor(ideal).astype(int)
    short = total - base.sum()
    order = np.argsort(-(ideal - base), kind="stable")
    base[order[:short]] += 1
    return base


def _info_column_counts(dist: DegreeDistribution, m: int, k: int) -> dict:
    """Integer column count per info degree with sum k and edge total m*(d_c-2)."""
    degs = np.array([d for d, f in dist.fractions() if f > 0], dtype=int)
    fr = np.array([f for d, f in dist.fractions() if f > 0], dtype=float)
    if len(degs) == 0:
        raise ConstructionError("distribution has no information-node mass")
    edges = m * (dist.d_c - 2)
    ideal_cols = edges * fr / fr.sum() / degs
    counts = _largest_remainder(k, ideal_cols)
    deficit = edges - int((counts * degs).sum())
    # shift single columns between degrees until the edge total is exact
    while deficit != 0:
        best = None
        for s in range(len(degs)):
            if counts[s] == 0:
                continue
            for t in range(len(degs)):
                step = degs[t] - degs[s]
                if step == 0 or np.sign(step) != np.sign(deficit) or abs(step) > abs(deficit):
                    continue
                trial = counts.copy()
                trial[s] -= 1
                trial[t] += 1
                cost = float(((trial - ideal_cols) ** 2).sum())
                key = (cost, s, t)
                if best is None or key < best[0]:
                    best = (key, trial, step)
        if best is None:
            raise ConstructionError(
                f"cannot split {edges} information edges over {k} columns of degrees {degs.tolist()}")
        counts = best[1]
        deficit -= best[2]
    if degs.max() > m:
        raise ConstructionError(f"degree {degs.max()} exceeds the {m} available check nodes")
    return {int(d): int(c) for d, c in zip(degs, counts) if c > 0}


def build_ra_parity_check(dist: DegreeDistribution, n: int, seed: int = 0,
                          max_tries: int = 200) -> RaParityCheckMatrix:
    """Random finite RA parity-check matrix realising ``dist`` with n columns."""
    check = validate_distribution(dist, tol=1e-8)
    if not check:
        raise ConstructionError(check.reason)
    d_c = int(dist.d_c)
    m = int(round(n * (1.0 - code_rate(dist))))
    k = n - m
    if m < 2 or k < 1:
        raise ConstructionError(f"n = {n} too small for rate {code_rate(dist):.4f}")
    counts = _info_column_counts(dist, m, k)
    col_deg = np.concatenate([np.full(c, d, dtype=int) for d, c in sorted(counts.items())])

    rng = np.random.default_rng(seed)
    col_deg = rng.permutation(col_deg)
    h = np.zeros((m, n), dtype=np.uint8)
    j = np.arange(m - 1)
    h[j, j] = 1
    h[j + 1, j] = 1
    # accumulator terminator: first P column, one entry in the last row
    h[0, m - 1] = 1
    h[m - 1, m - 1] = 1

    sockets = np.repeat(np.arange(m), d_c - 2)
    owner = np.repeat(np.arange(k), col_deg)
    for _ in range(max_tries):
        rows = rng.permutation(sockets)
        if _repair_duplicates(rows, owner, col_deg, rng):
            h[:, m:] = 0
            h[rows, m + owner] = 1
            return RaParityCheckMatrix(h, d_c)
    raise ConstructionError("could not place information edges without repeated positions")


def _repair_duplicates(rows, owner, col_deg, rng, max_swaps: int = 100000) -> bool:
    """Swap sockets in place until no column hits the same row twice."""
    starts = np.concatenate([[0], np.cumsum(col_deg)])
    total = len(rows)

    def dup_positions():
        bad = []
        for c in range(len(col_deg)):
            seg = rows[starts[c]:starts[c + 1]]
            if len(np.unique(seg)) < len(seg):
                seen = set()
                for off, r in enumerate(seg):
                    if r in seen:
                        bad.append(starts[c] + off)
                    seen.add(r)
        return bad

    bad = dup_positions()
    swaps = 0
    while bad:
        for p in bad:
            cp = owner[p]
            seg_p = set(rows[starts[cp]:starts[cp + 1]].tolist())
            for _ in range(64):
                q = int(rng.integers(total))
                cq = owner[q]
                if cq == cp:
                    continue
                seg_q = rows[starts[cq]:starts[cq + 1]]
                if rows[q] in seg_p or rows[p] in seg_q:
                    continue
                rows[p], rows[q] = rows[q], rows[p]
                break
            swaps += 1
            if swaps > max_swaps:
                return False
        bad = dup_positions()
    return True


def check_diffusion_property(h) -> bool:
    """Parity information must reach every information node through the checks.

    Requires (i) every information column to share a check with a parity
    column, and (ii) every check attached to an interior parity bit (a J
    column) to touch at least d_c - 3 information columns.
    """
    if isinstance(h, RaParityCheckMatrix):
        mat, d_c = h.h, h.d_c
    else:
        raise DomainError("check_diffusion_property expects an RaParityCheckMatrix")
    m, n = mat.shape
    parity = mat[:, :m]
    info = mat[:, m:]
    rows_with_parity = parity.any(axis=1)
    for c in range(n - m):
        rs = np.flatnonzero(info[:, c])
        if len(rs) == 0 or not rows_with_parity[rs].any():
            return False
    info_per_row = info.sum(axis=1)
    for c in range(m - 1):
        for r in np.flatnonzero(parity[:, c]):
            if info_per_row[r] < d_c - 3:
                return False
    return True


# ---------------------------------------------------------------- alist


def write_alist(mat: RaParityCheckMatrix, fh=None) -> str:
    """Serialise H in alist format (column lists first, then row lists, 1-based)."""
    h = mat.h
    m, n = h.shape
    col_idx = [np.flatnonzero(h[:, c]) + 1 for c in range(n)]
    row_idx = [np.flatnonzero(h[r, :]) + 1 for r in range(m)]
    cw = [len(c) for c in col_idx]
    rw = [len(r) for r in row_idx]
    out = io.StringIO()
    out.write(f"{n} {m}\n{max(cw)} {max(rw)}\n")
    out.write(" ".join(map(str, cw)) + "\n")
    out.write(" ".join(map(str, rw)) + "\n")
    for c in col_idx:
        out.write(" ".join(map(str, list(c) + [0] * (max(cw) - len(c)))) + "\n")
    for r in row_idx:
        out.write(" ".join(map(str, list(r) + [0] * (max(rw) - len(r)))) + "\n")
    text = out.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def read_alist(text: str, d_c: int | None = None) -> RaParityCheckMatrix:
    tok = [int(t) for t in text.split()]
    n, m = tok[0], tok[1]
    max_cw = tok[2]
    pos = 4 + n + m
    h = np.zeros((m, n), dtype=np.uint8)
    for c in range(n):
        for r in tok[pos:pos + max_cw]:
            if r:
                h[r - 1, c] = 1
        pos += max_cw
    if d_c is None:
        d_c = int(h.sum(axis=1).max())
    return RaParityCheckMatrix(h, d_c)
