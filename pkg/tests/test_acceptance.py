"""Acceptance checks, one printed PASS/FAIL line per criterion.

The lines are printed in the pytest terminal summary, e.g. via
``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.  The
Monte Carlo checks take several minutes on one core.
"""

from __future__ import annotations

import itertools
import math
import sys
from functools import partial

import numpy as np
import pytest

from pnglab import cli
from pnglab import combinatorics as cb
from pnglab.png import droplet_height, droplet_nucleations, simulate_png_dynamics
from pnglab.pointfield import droplet_field
from pnglab.rmt import edge_sample, top_eigenvalue_path
from pnglab.rng import Seed
from pnglab.special.kernels import airy_kernel, extended_airy_kernel, goe_kernel_entry
from pnglab.special.tracy_widom import grid, left_tail_ratio, right_tail_ratio, table_moments, tw_cdf
from pnglab.stats import EmpiricalDist, ks_distance, ks_two_sample

RESULTS: list[str] = []


def report(tag: str, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {tag:>3s} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)  # printed in the terminal summary by conftest


def _replicas(fn, n):
    return np.array(cli.run_replicas(fn, n, threads=1))


# -- 1-3: Tracy-Widom -------------------------------------------------------------

@pytest.mark.parametrize("beta", [1, 2])
def test_criterion_01_dual_route(beta):
    s = grid(-6.0, 3.0, 0.1)
    diff = np.max(np.abs(tw_cdf(beta, s, "painleve") - tw_cdf(beta, s, "fredholm")))
    ok = diff <= 1e-6
    report(f"1.{beta}", f"dual-route F{beta} on [-6,3] step 0.1", ok, f"max diff {diff:.2e} (<= 1e-6)")
    assert ok


def test_criterion_02_g_infinity(f2_table):
    _, var = table_moments(f2_table)
    dev = abs(2 * var - 1.6264)
    ok = dev <= 5e-4
    report("2", "2 Var(F2) = 1.6264", ok, f"2 Var = {2 * var:.6f}, |dev| {dev:.1e} (<= 5e-4)")
    assert ok


def test_criterion_03_left_tail():
    r = left_tail_ratio(6.0)
    ok = 0.8 <= r <= 1.2
    report("3.L", "left tail -ln F2(-6)/(6^3/12)", ok, f"ratio {r:.4f} (in [0.8, 1.2])")
    assert ok


@pytest.mark.xfail(strict=True, reason="log prefactor ln(16 pi s^1.5) shifts the ratio to 1.235 at s=8")
def test_criterion_03_right_tail():
    r = right_tail_ratio(8.0)
    ok = 0.85 <= r <= 1.15
    report("3.R", "right tail -ln(1-F2(8))/(4 8^1.5/3)", ok, f"ratio {r:.4f} (in [0.85, 1.15])")
    assert ok


# -- 4-5: exact combinatorics ----------------------------------------------------------

def test_criterion_04_rsk_exact():
    bad = 0
    for sigma in itertools.permutations(range(1, 7)):
        P, Q = cb.rsk(sigma)
        bad += cb.rsk_inverse(P, Q) != sigma or len(P[0]) != cb.lis_length(sigma)
    for sigma in itertools.permutations(range(1, 8)):
        partial_sums = np.cumsum(cb.rsk_shape(sigma))
        for k in range(1, 8):
            bad += cb.greene_bruteforce(sigma, k) != partial_sums[min(k, len(partial_sums)) - 1]
    for n in range(1, 7):
        bad += sum(cb.count_standard_tableaux(lam) ** 2 for lam in cb.partitions(n)) != math.factorial(n)
    ok = bad == 0
    report("4", "RSK round trip (S6), Greene (S7), sum d^2 = n!", ok, f"{bad} mismatches")
    assert ok


def test_criterion_05_png_cross_oracle():
    rng = Seed(505).generator()
    Ts = rng.uniform(5.0, 50.0, size=1000)
    bad = 0
    for i, T in enumerate(Ts):
        f = droplet_field(T, Seed(505, i))
        xs = np.linspace(-T, T, 11)
        dyn = simulate_png_dynamics(droplet_nucleations(f, T), T, xs).hs
        bad += sum(int(h) != droplet_height(T, x, f) for h, x in zip(dyn, xs))
    ok = bad == 0
    report("5", "PNG dynamics == LIS height", ok, f"{bad} mismatches over 1000 fields x 11 points")
    assert ok


# -- 6-10: Monte Carlo -------------------------------------------------------------

def test_criterion_06_droplet(f2_table):
    s = _replicas(partial(cli._png_replica, geometry="droplet", T=100.0, seed=606), 4000)
    ks = ks_distance(EmpiricalDist(s), f2_table)
    ok = ks <= 0.08
    report("6", "droplet T=100 vs F2", ok, f"KS {ks:.4f} (<= 0.08), n=4000")
    assert ok


def test_criterion_07_flat(f1_table):
    s = _replicas(partial(cli._png_replica, geometry="flat", T=100.0, seed=707), 4000)
    ks = ks_distance(EmpiricalDist(s), f1_table)
    ok = ks <= 0.10
    report("7", "flat T=100 vs F1", ok, f"KS {ks:.4f} (<= 0.10), n=4000")
    assert ok


@pytest.mark.parametrize("ensemble,beta", [("gue", 2), ("goe", 1)])
def test_criterion_08_matrix_edge(ensemble, beta, request):
    table = request.getfixturevalue(f"f{beta}_table")
    s = _replicas(partial(cli._rmt_replica, ensemble=ensemble, N=200, seed=808), 5000)
    ks = ks_distance(EmpiricalDist(s), table)
    ok = ks <= 0.05
    report(f"8.{beta}", f"{ensemble.upper()} N=200 edge vs F{beta}", ok, f"KS {ks:.4f} (<= 0.05), n=5000")
    assert ok


def test_criterion_09_lis(f2_table):
    N = 10_000
    L = np.array([cb.lis_length(cb.uniform_permutation(N, Seed(909, i)).tolist()) for i in range(4000)])
    s = (L - 2 * math.sqrt(N)) / N ** (1 / 6)
    ks = ks_distance(EmpiricalDist(s), f2_table)
    ok = ks <= 0.08
    report("9", "LIS N=1e4 vs F2", ok, f"KS {ks:.4f} (<= 0.08), n=4000")
    assert ok


def test_criterion_10_dyson():
    N = 50
    far = np.array([top_eigenvalue_path("gue", N, (0.0, 1000.0), Seed(1010, i)).values for i in range(1000)])
    corr = float(np.corrcoef(far[:, 0], far[:, 1])[0, 1])
    ks = {}
    n = 5000
    for kind in ("gue", "goe"):
        moved = [top_eigenvalue_path(kind, N, (0.0, 0.05), Seed(1011, i)).values[1] for i in range(n)]
        static = [edge_sample(kind, N, Seed(1012, i)) for i in range(n)]
        ks[kind] = ks_two_sample(moved, static)
    ok = abs(corr) < 0.1 and max(ks.values()) <= 0.05
    report("10", "Dyson decorrelation + one-step stationarity", ok,
           f"corr(lag 1e3) {corr:+.4f} (|.| < 0.1); KS GUE {ks['gue']:.4f}, GOE {ks['goe']:.4f} (<= 0.05)")
    assert ok


# -- 11-12 ----------------------------------------------------------------------

def test_criterion_11_kernels():
    g = np.linspace(-3.0, 3.0, 5)
    ext = goe = 0.0
    for s1, s2 in itertools.product(g, g):
        ext = max(ext, abs(extended_airy_kernel(0.7, s1, 0.7, s2) - airy_kernel(s1, s2)))
        goe = max(goe,
                  abs(goe_kernel_entry(1, 1, s1, s2) + goe_kernel_entry(1, 1, s2, s1)),
                  abs(goe_kernel_entry(2, 2, s1, s2) + goe_kernel_entry(2, 2, s2, s1)),
                  abs(goe_kernel_entry(2, 1, s1, s2) + goe_kernel_entry(1, 2, s2, s1)))
    ok = ext <= 1e-8 and goe <= 1e-8
    report("11", "kernel identities on 5x5 grid", ok, f"equal-time {ext:.1e}, GOE antisymmetry {goe:.1e} (<= 1e-8)")
    assert ok


def test_criterion_12_reproducibility(tmp_path):
    runs = {
        "png": ["png", "--T", "30", "--samples", "40"],
        "rmt": ["rmt", "--ensemble", "goe", "--N", "40", "--samples", "40"],
        "dyson": ["dyson", "--N", "20", "--taus", "0,0.5", "--paths", "20"],
    }
    same = True
    for name, args in runs.items():
        rows = []
        for k in (1, 2, 4):
            out = tmp_path / f"{name}-{k}.csv"
            assert cli.main([*args, "--seed", "1212", "--threads", str(k), "--out", str(out)]) == 0
            rows.append([ln for ln in out.read_text().splitlines() if not ln.startswith("#")])
        same &= rows[0] == rows[1] == rows[2]
    report("12", "CLI rows independent of --threads", same, "png, rmt, dyson at threads 1/2/4")
    assert same


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
