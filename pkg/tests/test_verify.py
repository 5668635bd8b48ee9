import numpy as np
import pytest

from conftest import P
from coronab import DimensionMismatch, GridConfig, Poly, RationalFn, corona_delta, residual, sup_norm
from coronab.sampling import random_complex
from coronab.verify import grid_error, sup_sum


def test_sup_norm_examples():
    assert sup_norm(P(0, 0, 1)) == pytest.approx(1, abs=1e-12)
    assert sup_norm(RationalFn(Poly([1]), Poly([1, -0.5]))) == pytest.approx(2, abs=1e-9)
    assert sup_norm(RationalFn.const(3 - 4j)) == pytest.approx(5)


def test_sup_norm_between_peaks():
    # |1 + z^7| peaks at z = 1; with 64 samples that point is on the grid, so shift it off
    f = P(1, *([0] * 6), np.exp(0.3j))
    assert sup_norm(f, GridConfig(64)) == pytest.approx(2, abs=1e-9)


def test_grid_config_validation():
    with pytest.raises(ValueError):
        GridConfig(100)
    with pytest.raises(ValueError):
        GridConfig(32)
    with pytest.raises(ValueError):
        GridConfig(512, 0)


def test_disk_points_cover_the_disk():
    pts = GridConfig(128, 16).disk_points()
    assert np.abs(pts).max() == pytest.approx(1)
    assert 0 in pts
    # every point of a fine test mesh is near some grid point
    probe = 0.99 * np.sqrt(np.linspace(0, 1, 400)) * np.exp(2j * np.pi * np.linspace(0, 7, 400))
    gap = np.abs(probe[:, None] - pts[None, :]).min(axis=1).max()
    assert gap < 0.1


def test_sup_norm_stable_under_doubling(rng):
    """Standard corpus: degree <= 16, denominators certified with margin >= 0.1."""
    worst = 0.0
    for _ in range(60):
        deg = int(rng.integers(0, 17))
        num = Poly(random_complex(rng, deg + 1))
        roots = (1.2 + rng.random(2)) * np.exp(2j * np.pi * rng.random(2))
        f = RationalFn(num, Poly.from_roots(roots))
        assert f.cert.lower_bound >= 0.1
        worst = max(worst, abs(sup_norm(f, GridConfig(1024)) - sup_norm(f, GridConfig(512))))
    assert worst <= 1e-6


def test_grid_error_is_small_for_smooth_functions():
    # |f'| = 2 on the circle, half-spacing pi/512
    assert grid_error(P(0, 0, 1)) == pytest.approx(2 * np.pi / 512)
    assert grid_error(RationalFn.const(2)) == 0


def test_corona_delta_examples():
    d = corona_delta([P(0, 1), P(1, -1)])
    assert 1 - 1e-9 <= d <= 1 + 1e-9
    assert corona_delta([P(0, 0, 1), P(0, 0, 0, 1)]) <= 1e-3
    assert corona_delta([P(1)]) == pytest.approx(1)


def test_corona_delta_finds_interior_dip():
    a = 0.37 - 0.21j
    f = [P(-a, 1), P(-a, 1) * P(1, 0.5)]
    assert corona_delta(f, GridConfig(256, 80)) <= 1e-3


def test_residual_examples():
    fs = [P(0, 0, 1), P(1, 0, 0, -1)]
    assert residual(fs, [P(0, 0, 0, 0, 1), P(1, 0, 0, 1)]) <= 1e-12
    assert residual(fs, [P(0), P(0)]) == pytest.approx(1)
    assert residual([P(1)], [P(1)]) == 0
    with pytest.raises(DimensionMismatch):
        residual(fs, [P(1)])


def test_sup_sum():
    # |z| + |1 - z| peaks at z = -1
    assert sup_sum([P(0, 1), P(1, -1)]) == pytest.approx(3, abs=1e-9)
