"""EXIT functions of RA code nodes when both channels are binary erasure channels."""
from __future__ import annotations

import itertools

import numpy as np

from .errors import DomainError


def _prob(x, name):
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"{name} = {x} must lie in [0, 1]")


def _open(i_a):
    arr = np.asarray(i_a, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError("i_a must lie in the open interval (0, 1)")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _degree(d, lo, name):
    if int(d) != d or d < lo:
        raise DomainError(f"{name} must be an integer >= {lo}")
    return int(d)


def bec_vn_exit(q, d_v, i_a):
    """I_E = 1 - q (1 - I_A)^(d_v - 1)."""
    _prob(q, "q")
    d_v = _degree(d_v, 1, "d_v")
    t = _open(i_a)
    return _out(1.0 - q * (1.0 - t) ** (d_v - 1))


def bec_cn_exit(d_c, i_a):
    """I_E = I_A^(d_c - 1)."""
    d_c = _degree(d_c, 2, "d_c")
    t = _open(i_a)
    return _out(t ** (d_c - 1))


def bec_cn_exit_inverse(d_c, i_a):
    """Inverse of the check-node curve, I_A^(1/(d_c - 1))."""
    d_c = _degree(d_c, 2, "d_c")
    t = _open(i_a)
    if d_c == 2:
        return _out(t.copy())
    return _out(t ** (1.0 / (d_c - 1)))


def bec_vn_exit_uep(q1, q2, dist, i_a):
    """Edge-weighted VN curve: parity nodes see q1, information nodes see q2."""
    _prob(q1, "q1")
    _prob(q2, "q2")
    t = _open(i_a)
    out = dist.a * (1.0 - q1 * (1.0 - t))
    for d, frac in dist.fractions():
        out = out + frac * (1.0 - q2 * (1.0 - t) ** (d - 1))
    return _out(out)


def bec_vn_limits(q, d_v):
    """Curve values at I_A -> 0+ and I_A -> 1-, for plotting endpoints."""
    _prob(q, "q")
    d_v = _degree(d_v, 1, "d_v")
    at0 = 1.0 - q
    at1 = 1.0 if d_v > 1 else 1.0 - q
    return at0, at1


def bec_vn_erasure_oracle(q, p, d_v):
    """1 - P(every observation erased), by enumerating all erasure patterns.

    The VN sees its channel symbol (erased w.p. q) and d_v - 1 extrinsic
    symbols (each erased w.p. p). Reference for tests only.
    """
    _prob(q, "q")
    _prob(p, "p")
    d_v = _degree(d_v, 1, "d_v")
    lost = 0.0
    for pattern in itertools.product((0, 1), repeat=d_v):
        # pattern[0] is the channel symbol, 1 = erased
        pr = q if pattern[0] else 1.0 - q
        for e in pattern[1:]:
            pr *= p if e else 1.0 - p
        if all(pattern):
            lost += pr
    return 1.0 - lost
