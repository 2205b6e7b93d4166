import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pnglab import combinatorics as cb
from pnglab.png import (LineEnsemble, droplet_height, droplet_nucleations, flat_height,
                        height_profile, line_ensemble, rescale_droplet, rescale_flat,
                        simulate_png_dynamics)
from pnglab.pointfield import Region, droplet_field, polymer_to_spacetime, sample_poisson
from pnglab.rng import Seed

EMPTY = np.empty((0, 2))


def test_empty_heights():
    assert droplet_height(5.0, 0.0, EMPTY) == 0
    assert flat_height(5.0, EMPTY) == 0
    assert np.all(height_profile(5.0, EMPTY).hs == 0)


def test_single_point():
    assert droplet_height(5.0, 0.0, np.array([[1.0, 2.0]])) == 1


def test_support():
    f = droplet_field(6.0, Seed(1))
    for x in (6.0, -6.0, 7.5):
        assert droplet_height(6.0, x, f) == 0


def test_antichain_has_height_one():
    ys = np.linspace(0.1, 1.9, 7)
    pts = np.stack([ys, 2.0 - ys - 0.05], axis=1)
    assert flat_height(1.0, pts) == 1


def test_single_point_profile_is_cone_footprint():
    T, y0, z0 = 5.0, 1.0, 3.0
    xs = np.linspace(-T, T, 101)
    prof = height_profile(T, np.array([[y0, z0]]), xs)
    # (x, T) sees (y0, z0) iff y0 <= T + x and z0 <= T - x
    expect = ((y0 <= T + xs) & (z0 <= T - xs) & (np.abs(xs) < T)).astype(int)
    assert np.array_equal(prof.hs, expect)


@given(st.integers(0, 2**32))
@settings(max_examples=25, deadline=None)
def test_flat_height_is_triangle_lis(seed):
    f = sample_poisson(Region.triangle(1.6), 1.0, Seed(seed))
    if len(f) <= 10:
        assert flat_height(1.6, f) == cb.lis_bruteforce(f.points[:, 1].tolist())
    assert flat_height(1.6, f) == cb.lis_length(f.points[:, 1].tolist())


def test_dynamics_no_nucleations():
    r = simulate_png_dynamics(EMPTY, 3.0)
    assert np.all(r.hs == 0)


def test_dynamics_single_nucleation():
    x0, t0, T = 0.5, 1.0, 4.0
    xs = np.linspace(-5, 5, 201)
    r = simulate_png_dynamics(np.array([[x0, t0]]), T, xs)
    inside = np.abs(xs - x0) < T - t0
    assert np.all(r.hs[inside] == 1)
    assert np.all(r.hs[np.abs(xs - x0) > T - t0] == 0)


def test_dynamics_two_islands_merge():
    # islands born at x=+-1, t=0.1 merge at t=1.1; height stays 1 on the union
    nuc = np.array([[-1.0, 0.1], [1.0, 0.2]])
    xs = np.linspace(-4, 4, 161)
    r = simulate_png_dynamics(nuc, 3.0, xs)
    assert r.hs.max() == 1
    assert r.steps.annihilations == 1


def test_dynamics_stacked_nucleation():
    # second nucleation on top of the first island
    nuc = np.array([[0.0, 0.5], [0.1, 1.0]])
    r = simulate_png_dynamics(nuc, 2.0, np.array([0.0, 1.2]))
    assert list(r.hs) == [2, 1]


def test_dynamics_rejects_polymer_frame():
    f = droplet_field(2.0, Seed(0))
    with pytest.raises(ValueError):
        simulate_png_dynamics(f, 2.0)


@given(st.integers(0, 2**40), st.floats(2.0, 12.0))
@settings(max_examples=40, deadline=None)
def test_cross_oracle_small(seed, T):
    f = droplet_field(T, Seed(seed))
    xs = np.linspace(-T, T, 11)[1:-1]
    dyn = simulate_png_dynamics(droplet_nucleations(f, T), T, xs)
    lis = [droplet_height(T, x, f) for x in xs]
    assert list(dyn.hs) == lis


def test_line_ensemble_empty():
    le = line_ensemble(4.0, EMPTY)
    assert le.levels == {0: 0, -1: -1, -2: -2, -3: -3, -4: -4}


def test_line_ensemble_table_example():
    # points whose comparison permutation is (2,3,1,5,4)
    sigma = (2, 3, 1, 5, 4)
    pts = np.array([[s - 0.5, i + 0.5] for i, s in enumerate(sigma)])
    assert cb.comparison_permutation(pts) == sigma
    le = line_ensemble(6.0, pts, depth=2)
    assert (le.levels[0], le.levels[-1]) == (3, 1)


@given(st.integers(0, 2**40))
@settings(max_examples=25, deadline=None)
def test_line_ensemble_invariants(seed):
    T = 6.0
    f = droplet_field(T, Seed(seed))
    le = line_ensemble(T, f, depth=5)
    assert le.levels[0] == droplet_height(T, 0.0, f)
    for l in range(0, -4, -1):
        assert le.levels[l] >= le.levels[l - 1] + 1


@given(st.integers(0, 2**40))
@settings(max_examples=20, deadline=None)
def test_nested_fields_monotone(seed):
    T = 5.0
    f = droplet_field(T, Seed(seed)).points
    sub = f[::2]
    big = line_ensemble(T, f, 5).levels
    small = line_ensemble(T, sub, 5).levels
    # partial sums of lambda never decrease under supersets
    lam = lambda lv: [lv[-j] - (-j) for j in range(5)]  # noqa: E731
    assert np.all(np.cumsum(lam(big)) >= np.cumsum(lam(small)))


def test_line_ensemble_json():
    le = LineEnsemble(3.0, {0: 4, -1: 2})
    d = json.loads(le.to_json())
    assert d == {"t": 3.0, "levels": {"0": 4, "-1": 2}}
    assert LineEnsemble.from_json(le.to_json()) == le


def test_profile_csv(tmp_path):
    p = height_profile(3.0, droplet_field(3.0, Seed(2)), np.linspace(-3, 3, 5))
    p.to_csv(tmp_path / "h.csv")
    lines = (tmp_path / "h.csv").read_text().splitlines()
    assert lines[0] == "x,h" and len(lines) == 6


def test_rescale_examples():
    T = 27.0
    assert rescale_droplet(2 * T, T, 0.0) == (0.0, 0.0)
    assert rescale_droplet(2 * T + T ** (1 / 3), T, 0.0)[1] == pytest.approx(1.0)
    xi, s = rescale_droplet(2000, 1000.0, 100.0)
    assert xi == pytest.approx(1.0)
    assert s == pytest.approx((2000 - 2000 * math.sqrt(1 - 0.01)) / 10)
    assert rescale_flat(2 * T, T) == 0
    assert rescale_flat(2 * T + 2 ** (-2 / 3) * T ** (1 / 3), T) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        rescale_droplet(1, 10.0, 10.0)


def test_limit_shape_mean():
    T = 100.0
    hs = [droplet_height(T, 0.0, sample_poisson(Region.rectangle(T, T), 1.0, Seed(31, i)))
          for i in range(200)]
    assert abs(np.mean(hs) / T - 2.0) < 0.15


def test_spacetime_and_polymer_heights_agree():
    # nucleations drawn directly in the diamond (intensity 2) vs the LIS formula
    T = 8.0
    f = sample_poisson(Region.diamond(0.0, T), 2.0, Seed(77))
    dyn = simulate_png_dynamics(f, T, np.array([0.0]))
    from pnglab.pointfield import spacetime_to_polymer

    assert dyn.hs[0] == droplet_height(T, 0.0, spacetime_to_polymer(f.points))
