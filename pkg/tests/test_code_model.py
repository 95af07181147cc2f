import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from uepexit.code_model import (DegreeDistribution, RaParityCheckMatrix, build_ra_parity_check,
                                check_diffusion_property, code_rate, has_dual_diagonal_j,
                                rate_from_objective, read_alist, validate_distribution,
                                write_alist)
from uepexit.errors import ConstructionError


def test_validate_examples():
    assert validate_distribution(DegreeDistribution(4, 0.5, 0.5))
    bad = validate_distribution(DegreeDistribution(4, 0.4, 0.6))
    assert not bad and "2/d_c" in bad.reason
    assert validate_distribution(DegreeDistribution(8, 0.25, 0.5, {3: 0.25}))


def test_validate_reports_first_violation():
    assert "sum" in validate_distribution(DegreeDistribution(4, 0.5, 0.4)).reason
    assert "negative" in validate_distribution(DegreeDistribution(4, 0.5, 0.7, {3: -0.2})).reason
    assert "d_c" in validate_distribution(DegreeDistribution(3, 2 / 3, 1 / 3)).reason


def test_rate_examples():
    assert code_rate(DegreeDistribution(4, 0.5, 0.5)) == pytest.approx(0.5)
    assert code_rate(DegreeDistribution(2, 1.0, 0.0)) == 0.0


def _random_dist(rng, dc):
    w = rng.random(6) * (rng.random(6) < 0.7)
    w[0] += 1e-3
    w = w / w.sum() * (1 - 2 / dc)
    return DegreeDistribution(dc, 2 / dc, w[0], {i + 3: v for i, v in enumerate(w[1:])})


def test_rate_monotone_in_objective():
    for dc in (4, 7, 12):
        objs = np.linspace(0.01, 0.5, 50)
        rates = [rate_from_objective(dc, o) for o in objs]
        assert np.all(np.diff(rates) > 0)


def test_rate_upper_envelope_random():
    rng = np.random.default_rng(7)
    for _ in range(500):
        dc = int(rng.integers(4, 25))
        d = _random_dist(rng, dc)
        assert validate_distribution(d, tol=1e-9)
        r = code_rate(d)
        assert 0 <= r < 1 - 2 / (2 + dc * (1 - 2 / dc)) + 1e-15


def test_dict_round_trip():
    d = DegreeDistribution(8, 0.25, 0.5, {3: 0.25})
    assert DegreeDistribution.from_dict(d.to_dict()) == d


def test_small_matrix_shape_and_determinism():
    d = DegreeDistribution(4, 0.5, 0.5)
    h1 = build_ra_parity_check(d, 16, seed=3)
    h2 = build_ra_parity_check(d, 16, seed=3)
    assert h1.h.shape == (8, 16)
    assert has_dual_diagonal_j(h1.h)
    assert np.array_equal(h1.h, h2.h)
    assert np.all(h1.h.sum(axis=1) == 4)
    assert h1.h[:, 7].sum() == 2 and h1.h[7, 7] == 1


def _mixed(dc):
    rest = 1 - 2 / dc
    return DegreeDistribution(dc, 2 / dc, 0.4 * rest, {3: 0.3 * rest, 6: 0.3 * rest})


@pytest.mark.parametrize("dc", [4, 6, 8])
@pytest.mark.parametrize("n", [64, 512])
def test_structure_and_diffusion(dc, n):
    h = build_ra_parity_check(_mixed(dc), n, seed=11)
    assert has_dual_diagonal_j(h.h)
    assert check_diffusion_property(h)
    assert np.all(h.h.sum(axis=1) == dc)
    assert np.all(h.h[:, h.rows:].sum(axis=0) > 0)
    assert validate_distribution(h.implied_distribution(), tol=2.0 / n)


def _adjacency_oracle(h):
    m = h.rows
    for c in h.info_columns:
        if not any(h.h[r, c] and any(h.h[r, :m]) for r in range(m)):
            return False
    for c in range(m - 1):
        for r in range(m):
            if h.h[r, c] and sum(h.h[r, m:]) < h.d_c - 3:
                return False
    return True


def test_diffusion_matches_adjacency_scan():
    for seed in range(5):
        h = build_ra_parity_check(_mixed(4), 64, seed=seed)
        assert check_diffusion_property(h) == _adjacency_oracle(h) is True


def test_diffusion_counterexample():
    h = build_ra_parity_check(_mixed(8), 64, seed=1)
    broken = h.h.copy()
    broken[5, h.rows - 1:] = 0
    assert not check_diffusion_property(RaParityCheckMatrix(broken, 8))


def test_diffusion_toy():
    toy = np.array([[1, 1, 1], [1, 1, 1]], dtype=np.uint8)
    h = RaParityCheckMatrix(toy, 3)
    assert has_dual_diagonal_j(toy)
    assert check_diffusion_property(h)


def test_construction_error():
    with pytest.raises(ConstructionError):
        build_ra_parity_check(DegreeDistribution(4, 0.5, 0.5), 3)
    with pytest.raises(ConstructionError):
        build_ra_parity_check(DegreeDistribution(4, 0.4, 0.6), 64)


def test_alist_round_trip():
    h = build_ra_parity_check(_mixed(6), 64, seed=2)
    text = write_alist(h)
    back = read_alist(text, d_c=6)
    assert np.array_equal(back.h, h.h)
    assert text.splitlines()[0] == f"{h.cols} {h.rows}"


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 10), st.integers(0, 10**6))
def test_random_constructions_are_valid(dc, seed):
    rng = np.random.default_rng(seed)
    d = _random_dist(rng, dc)
    d = DegreeDistribution(dc, d.a, d.b, {k: v for k, v in d.lambdas.items() if k <= 6})
    tot = d.b + sum(d.lambdas.values())
    scale = (1 - 2 / dc) / tot
    d = DegreeDistribution(dc, 2 / dc, d.b * scale, {k: v * scale for k, v in d.lambdas.items()})
    try:
        h = build_ra_parity_check(d, 256, seed=seed)
    except ConstructionError:
        return
    assert has_dual_diagonal_j(h.h)
    assert np.all(h.h.sum(axis=1) == dc)
    assert validate_distribution(h.implied_distribution(), tol=2.0 / 256 + 1e-9)
