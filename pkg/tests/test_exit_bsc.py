import numpy as np
import pytest

from uepexit.code_model import DegreeDistribution
from uepexit.curves import GridSpec
from uepexit.errors import DomainError
from uepexit.exit_bsc import (bsc_cn_exit, bsc_cn_exit_inverse, bsc_cn_extrinsic_info,
                              bsc_cn_info_oracle, bsc_vn_exit, bsc_vn_exit_uep,
                              bsc_vn_extrinsic_info, bsc_vn_info_oracle, channel_from_info,
                              info_from_bias)
from uepexit.numerics import binary_entropy, inverse_binary_entropy

T = GridSpec(1000).points()
# 50-digit references from mpmath enumeration / closed form
VN_01_02_3 = 0.72118261974799071394191019838350936007977231147538
CN_01_4 = 0.19837089841438813261146778264113886151503868126734


def test_vn_examples():
    assert bsc_vn_extrinsic_info(0.1, 0.3, 1) == pytest.approx(1 - binary_entropy(0.1), abs=1e-15)
    assert bsc_vn_extrinsic_info(0.0, 0.2, 4) == 1.0
    assert abs(bsc_vn_extrinsic_info(0.1, 0.2, 3) - VN_01_02_3) < 1e-14


def test_vn_oracle_examples():
    assert bsc_vn_info_oracle(0.1, 0.5, 3) == pytest.approx(1 - binary_entropy(0.1), abs=1e-14)
    assert bsc_vn_info_oracle(0.5, 0.1, 2) == pytest.approx(1 - binary_entropy(0.1), abs=1e-14)
    assert abs(bsc_vn_info_oracle(0.1, 0.2, 3) - VN_01_02_3) < 1e-14
    with pytest.raises(DomainError):
        bsc_vn_info_oracle(0.1, 0.2, 9)


def test_theorem1_matches_enumeration():
    grid = np.linspace(0.01, 0.49, 7)
    for dv in range(1, 7):
        for e in grid:
            for d in grid:
                assert abs(bsc_vn_extrinsic_info(e, d, dv) - bsc_vn_info_oracle(e, d, dv)) <= 1e-10


def test_theorem2_matches_enumeration():
    for dc in range(2, 9):
        for d in np.linspace(0.0, 0.5, 9):
            assert abs(bsc_cn_extrinsic_info(d, dc) - bsc_cn_info_oracle(d, dc)) <= 1e-10


def test_cn_examples():
    d = 0.37
    assert bsc_cn_extrinsic_info(d, 2) == pytest.approx(1 - binary_entropy(d), abs=1e-15)
    assert bsc_cn_extrinsic_info(0.0, 7) == 1.0
    assert abs(bsc_cn_extrinsic_info(0.1, 4) - CN_01_4) < 1e-14
    assert bsc_cn_info_oracle(0.5, 5) == pytest.approx(0.0, abs=1e-15)
    assert bsc_cn_info_oracle(0.0, 3) == pytest.approx(1.0)


def test_degenerate_identities():
    for dv in range(1, 9):
        assert bsc_vn_extrinsic_info(0.13, 0.5, dv) == pytest.approx(1 - binary_entropy(0.13), abs=1e-15)
    for dc in range(2, 12):
        assert bsc_cn_extrinsic_info(0.5, dc) == 0.0


def test_exit_forms():
    assert bsc_vn_exit(0.1, 1, 0.4) == pytest.approx(1 - binary_entropy(0.1), abs=1e-15)
    assert bsc_vn_exit(0.0, 3, 0.5) == 1.0
    ref = bsc_vn_info_oracle(0.1, inverse_binary_entropy(0.3), 3)
    assert abs(bsc_vn_exit(0.1, 3, 0.7) - ref) < 1e-10
    assert bsc_cn_exit(2, 0.6) == pytest.approx(0.6)
    assert bsc_cn_exit(4, 1 - 1e-15) == pytest.approx(1.0, abs=1e-9)
    ref = bsc_cn_info_oracle(inverse_binary_entropy(0.5), 4)
    assert abs(bsc_cn_exit(4, 0.5) - ref) < 1e-10


def test_inverse_examples():
    assert bsc_cn_exit_inverse(2, 0.6) == pytest.approx(0.6)
    assert bsc_cn_exit_inverse(3, bsc_cn_exit(3, 0.4)) == pytest.approx(0.4, abs=1e-12)
    # independent root find of the forward map
    target = 0.5
    lo, hi = 1e-9, 1 - 1e-9
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if bsc_cn_exit(8, mid) < target:
            lo = mid
        else:
            hi = mid
    assert abs(bsc_cn_exit_inverse(8, target) - 0.5 * (lo + hi)) < 1e-9


def test_inverse_round_trip():
    for dc in range(2, 13):
        assert np.max(np.abs(bsc_cn_exit_inverse(dc, bsc_cn_exit(dc, T)) - T)) < 1e-8


def test_monotonicity():
    for d in range(1, 8):
        assert np.all(np.diff(bsc_vn_exit(0.05, d, T)) >= -1e-15)
    for dc in range(2, 10):
        assert np.all(np.diff(bsc_cn_exit(dc, T)) >= 0)
        assert np.all(np.diff(bsc_cn_exit_inverse(dc, T)) >= 0)
    eps = np.linspace(0, 0.5, 11)
    vals = np.array([bsc_vn_exit(e, 4, T) for e in eps])
    assert np.all(np.diff(vals, axis=0) <= 1e-15)


def test_channel_from_info_precision():
    d, u = channel_from_info(T)
    assert np.max(np.abs(1 - binary_entropy(d) - T)) < 1e-14
    assert np.max(np.abs(info_from_bias(u) / T - 1)) < 1e-12
    # tiny information: the bias survives where 1 - I rounds to 1
    d, u = channel_from_info(np.array([1e-30]))
    assert abs(info_from_bias(u)[0] / 1e-30 - 1) < 1e-12


def test_uep_mixture():
    dist = DegreeDistribution(8, 0.25, 0.5, {3: 0.25})
    assert np.allclose(bsc_vn_exit_uep(0.0, 0.0, dist, 0.5), 1.0)
    one = DegreeDistribution(4, 1.0, 0.0, {})
    assert np.allclose(bsc_vn_exit_uep(0.07, 0.07, one, T), bsc_vn_exit(0.07, 2, T), atol=1e-15)
    e1, e2 = 0.01, 0.06
    ref = 0.25 * bsc_vn_exit(e1, 2, T) + 0.5 * bsc_vn_exit(e2, 2, T) + 0.25 * bsc_vn_exit(e2, 3, T)
    assert np.max(np.abs(bsc_vn_exit_uep(e1, e2, dist, T) - ref)) < 1e-14


def test_domain():
    with pytest.raises(DomainError):
        bsc_vn_extrinsic_info(0.1, 0.6, 3)
    with pytest.raises(DomainError):
        bsc_cn_exit(4, 0.0)
    with pytest.raises(DomainError):
        bsc_cn_info_oracle(0.1, 10)
