"""EXIT functions of RA code nodes when both channels are binary symmetric channels.

Internally the extrinsic channel is carried as its crossover delta together with
its bias u = 1 - 2*delta. Going through the bias keeps the check-node curves
accurate when I_A is tiny, where 1 - I_A rounds to 1 and a plain
H^{-1}(1 - I_A) loses every significant digit.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import DomainError
from .numerics import binary_entropy

_LN2 = math.log(2.0)
_STEPS = 64
_LOG_FLOOR = math.log(1e-300)
# series 1 - H((1-u)/2) = (1/ln2) sum_k u^(2k) / (2k (2k-1)), used for small u
_SERIES_CUT = 0.1
_SERIES_TERMS = 12


def _prob(x, name, hi=1.0):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > hi):
        raise DomainError(f"{name} must lie in [0, {hi}]")
    return arr


def _open(i_a):
    arr = np.asarray(i_a, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError("i_a must lie in the open interval (0, 1)")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _degree(d, lo, name, hi=None):
    if int(d) != d or d < lo or (hi is not None and d > hi):
        rng = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise DomainError(f"{name} must be an integer {rng}")
    return int(d)


# ------------------------------------------------------------ bias helpers


def info_from_bias(u):
    """1 - H((1 - u)/2) for bias u in [0, 1], accurate for tiny u."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < _SERIES_CUT
    us = u[small]
    u2 = us * us
    acc = np.zeros_like(us)
    pw = np.ones_like(us)
    for k in range(1, _SERIES_TERMS + 1):
        pw = pw * u2
        acc = acc + pw / (2 * k * (2 * k - 1))
    out[small] = acc / _LN2
    ub = u[~small]
    with np.errstate(divide="ignore", invalid="ignore"):
        minus = np.where(ub < 1.0, (1.0 - ub) * np.log1p(-ub), 0.0)
    out[~small] = ((1.0 + ub) * np.log1p(ub) + minus) / (2.0 * _LN2)
    return np.clip(out, 0.0, 1.0)


def channel_from_info(info):
    """Return (delta, u) of the BSC whose capacity 1 - H(delta) equals ``info``.

    Low information is solved for log u, high information for log delta, so
    both the bias and the crossover carry full relative precision.
    """
    info = np.asarray(info, dtype=float)
    lo_half = info < 0.5
    delta = np.empty_like(info)
    u = np.empty_like(info)

    # bisection on s = log u for info < 0.5
    tgt = info[lo_half]
    lo = np.full_like(tgt, _LOG_FLOOR)
    hi = np.zeros_like(tgt)
    for _ in range(_STEPS):
        mid = 0.5 * (lo + hi)
        below = info_from_bias(np.exp(mid)) < tgt
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    us = np.exp(0.5 * (lo + hi))
    us = np.where(tgt <= 0.0, 0.0, us)
    u[lo_half] = us
    delta[lo_half] = 0.5 * (1.0 - us)

    # bisection on s = log delta for info >= 0.5, i.e. H(delta) = 1 - info <= 0.5
    ent = 1.0 - info[~lo_half]
    lo = np.full_like(ent, _LOG_FLOOR)
    hi = np.full_like(ent, math.log(0.5))
    for _ in range(_STEPS):
        mid = 0.5 * (lo + hi)
        below = binary_entropy(np.exp(mid)) < ent
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    ds = np.exp(0.5 * (lo + hi))
    ds = np.where(ent <= 0.0, 0.0, ds)
    delta[~lo_half] = ds
    u[~lo_half] = 1.0 - 2.0 * ds
    return delta, u


# ------------------------------------------------------------ closed forms


def _h2_pair(r, s):
    """Binary entropy in bits given both r and s = 1 - r, each computed directly."""
    with np.errstate(divide="ignore", invalid="ignore"):
        tr = np.where(r > 0, r * np.log(np.where(r > 0, r, 1.0)), 0.0)
        ts = np.where(s > 0, s * np.log(np.where(s > 0, s, 1.0)), 0.0)
    return -(tr + ts) / _LN2


def _sigmoid(x):
    with np.errstate(over="ignore"):
        return np.exp(-np.logaddexp(0.0, -x))


def _vn_info(eps: float, delta, d_v: int):
    delta = np.asarray(delta, dtype=float)
    n = d_v - 1
    i = np.arange(n + 1, dtype=float)
    with np.errstate(divide="ignore"):
        le0 = math.log1p(-eps) if eps < 1 else -np.inf
        le1 = math.log(eps) if eps > 0 else -np.inf
        ld = np.log(delta)[..., None]
        l1d = np.log1p(-delta)[..., None]
    # log theta1 = log(1-eps) + i log(1-delta) + (n-i) log delta, theta2 mirrored
    with np.errstate(invalid="ignore"):
        l1 = le0 + np.where(i > 0, i * l1d, 0.0) + np.where(n - i > 0, (n - i) * ld, 0.0)
        l2 = le1 + np.where(i > 0, i * ld, 0.0) + np.where(n - i > 0, (n - i) * l1d, 0.0)
        lw = np.logaddexp(l1, l2)
        dead = np.isneginf(l1) & np.isneginf(l2)
        r = _sigmoid(np.where(dead, 0.0, l2 - l1))
        s = _sigmoid(np.where(dead, 0.0, l1 - l2))
    binom = np.array([math.comb(n, int(k)) for k in i], dtype=float)
    terms = np.where(dead, 0.0, binom * np.exp(lw) * _h2_pair(r, s))
    terms = np.sort(terms, axis=-1)
    return np.clip(1.0 - terms.sum(axis=-1), 0.0, 1.0)


def bsc_vn_extrinsic_info(epsilon, delta, d_v):
    """Extrinsic information of a degree-d_v VN with a BSC(epsilon) observation
    and d_v - 1 messages through a BSC(delta) extrinsic channel.

    1 - sum_i C(d_v-1, i) (th1 + th2) H(th2 / (th1 + th2)) with
    th1 = (1-eps)(1-delta)^i delta^(d_v-1-i), th2 = eps delta^i (1-delta)^(d_v-1-i).
    Products are formed in log space and summands added smallest first.
    """
    eps = float(_prob(epsilon, "epsilon"))
    dl = _prob(delta, "delta", 0.5)
    d_v = _degree(d_v, 1, "d_v")
    return _out(_vn_info(eps, dl, d_v))


def bsc_cn_extrinsic_info(delta, d_c):
    """1 - H((1 - (1 - 2 delta)^(d_c - 1)) / 2)."""
    dl = _prob(delta, "delta", 0.5)
    d_c = _degree(d_c, 2, "d_c")
    return _out(info_from_bias((1.0 - 2.0 * dl) ** (d_c - 1)))


def bsc_vn_exit(epsilon, d_v, i_a):
    """VN curve with the extrinsic crossover set to H^{-1}(1 - I_A)."""
    eps = float(_prob(epsilon, "epsilon"))
    d_v = _degree(d_v, 1, "d_v")
    t = _open(i_a)
    delta, _ = channel_from_info(t)
    return _out(_vn_info(eps, delta, d_v))


def bsc_cn_exit(d_c, i_a):
    d_c = _degree(d_c, 2, "d_c")
    t = _open(i_a)
    if d_c == 2:
        return _out(t.copy())
    _, u = channel_from_info(t)
    return _out(info_from_bias(u ** (d_c - 1)))


def bsc_cn_exit_inverse(d_c, i_a):
    """Inverse check-node curve: the bias exponent becomes 1/(d_c - 1)."""
    d_c = _degree(d_c, 2, "d_c")
    t = _open(i_a)
    if d_c == 2:
        return _out(t.copy())
    _, u = channel_from_info(t)
    return _out(info_from_bias(u ** (1.0 / (d_c - 1))))


def bsc_vn_exit_uep(eps1, eps2, dist, i_a):
    """Edge-weighted VN curve: parity nodes see eps1, information nodes see eps2."""
    e1 = float(_prob(eps1, "eps1"))
    e2 = float(_prob(eps2, "eps2"))
    t = _open(i_a)
    delta, _ = channel_from_info(t)
    out = dist.a * _vn_info(e1, delta, 2)
    for d, frac in dist.fractions():
        out = out + frac * _vn_info(e2, delta, d)
    return _out(out)


def bsc_vn_exit_rows(epsilon, degrees, i_a):
    """Matrix of VN curve values, one row per degree, with delta solved once."""
    eps = float(_prob(epsilon, "epsilon"))
    t = _open(i_a)
    delta, _ = channel_from_info(t)
    return np.array([_vn_info(eps, delta, int(d)) for d in degrees])


# ------------------------------------------------------------ oracles


def _h2(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def bsc_vn_info_oracle(epsilon, delta, d_v):
    """I(V; Y, A) by enumerating (v, y, a) for a uniform bit V. Testing reference."""
    eps = float(_prob(epsilon, "epsilon"))
    dl = float(_prob(delta, "delta", 0.5))
    d_v = _degree(d_v, 1, "d_v", 8)
    cond = 0.0
    for y in (0, 1):
        for a in itertools.product((0, 1), repeat=d_v - 1):
            joint = []
            for v in (0, 1):
                pr = 0.5 * (eps if y != v else 1.0 - eps)
                for bit in a:
                    pr *= dl if bit != v else 1.0 - dl
                joint.append(pr)
            tot = joint[0] + joint[1]
            if tot > 0:
                cond += tot * _h2(joint[1] / tot)
    return 1.0 - cond


def bsc_cn_info_oracle(delta, d_c):
    """I(V_1; A) at a single parity check, enumerating every codeword and flip pattern.

    V_1 is the XOR of the other d_c - 1 uniform bits, each seen through a
    BSC(delta). Testing reference.
    """
    dl = float(_prob(delta, "delta", 0.5))
    d_c = _degree(d_c, 2, "d_c", 9)
    n = d_c - 1
    cond = 0.0
    for a in itertools.product((0, 1), repeat=n):
        joint = [0.0, 0.0]
        for v in itertools.product((0, 1), repeat=n):
            pr = 0.5 ** n
            for ai, vi in zip(a, v):
                pr *= dl if ai != vi else 1.0 - dl
            joint[sum(v) % 2] += pr
        tot = joint[0] + joint[1]
        if tot > 0:
            cond += tot * _h2(joint[1] / tot)
    return 1.0 - cond
