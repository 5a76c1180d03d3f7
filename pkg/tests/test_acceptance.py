"""Acceptance suite: one test per exit criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass line
per criterion; a failing criterion fails its test.
"""

import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from lcinterp.cheb import eval_series_2d
from lcinterp.interp import (
    evaluate,
    fundamental_polynomial,
    interpolate,
    residual_at_nodes,
)
from lcinterp.measure import (
    fit_rate,
    interp_error_norms,
    lebesgue_constant,
    mz_ratio,
    torus_norm_1d,
)
from lcinterp.nodes import (
    make_degree_pair,
    node_set_from_curve,
    node_set_from_grid,
    spectral_set,
)
from lcinterp.testbed import get, square_corpus
from lcinterp.vdv import sample_params, vdv_apply_1d

PADUA_8_128 = [make_degree_pair(k, k + 1) for k in (8, 16, 32, 64, 128)]


def report(number: int, name: str, detail: str = ""):
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {number:2d}] {name}: PASS{suffix}")


def rate_records(f, pairs, ps, points=2048, tol=1e-3):
    records = {p: [] for p in ps}
    for d in pairs:
        ip = interpolate(f, d)
        norms = interp_error_norms(f, ip, ps, points=points, tol=tol)
        for p in ps:
            records[p].append((d.m, d.n, norms[p]))
    return records


@pytest.fixture(scope="module")
def step_rates():
    start = time.monotonic()
    records = rate_records(get("hbv_step"), PADUA_8_128, (1.0, 2.0))
    return records, time.monotonic() - start


def test_c01_node_structure():
    start = time.monotonic()
    pairs = [
        (m, n)
        for m in range(1, 41)
        for n in range(1, 41)
        if math.gcd(m, n) == 1
    ]
    for m, n in pairs:
        d = make_degree_pair(m, n)
        grid = node_set_from_grid(d)
        expected = (m + 1) * (n + 1) // 2
        assert len(grid) == expected
        curve = node_set_from_curve(d)
        assert np.max(np.abs(grid.coords() - curve.coords())) <= 1e-12
        assert abs(grid.weight_sum - 1.0) <= 1e-12
        assert len(spectral_set(d)) == expected
    elapsed = time.monotonic() - start
    assert elapsed < 5.0, f"node-structure sweep took {elapsed:.2f}s (limit 5s)"
    report(1, "node structure over all coprime pairs up to 40", f"{len(pairs)} pairs, {elapsed:.2f}s")


def test_c02_interpolation_exactness():
    pairs = [(3, 2), (7, 5), (13, 12), (33, 32)]
    for m, n in pairs:
        d = make_degree_pair(m, n)
        for f in square_corpus():
            ip = interpolate(f, d)
            res = residual_at_nodes(ip)
            assert res <= 1e-10, f"{f.id} at ({m},{n}): residual {res:.2e}"
    report(2, "interpolation conditions hold at the nodes", f"{len(pairs)} pairs x corpus")


def test_c03_reproduction_and_cardinality():
    rng = np.random.default_rng(2024)
    for m, n in [(3, 2), (5, 4), (7, 5)]:
        d = make_degree_pair(m, n)
        exps = sorted(spectral_set(d).exponents)
        for _ in range(50):
            coeffs = dict(zip(exps, rng.uniform(-1, 1, len(exps))))
            ip = interpolate(
                lambda x, y: sum(
                    c
                    * (np.cos(i * np.arccos(x)) * (np.sqrt(2) if i else 1))
                    * (np.cos(j * np.arccos(y)) * (np.sqrt(2) if j else 1))
                    for (i, j), c in coeffs.items()
                ),
                d,
            )
            err = max(abs(ip.series.coeffs[k] - coeffs[k]) for k in exps)
            assert err <= 1e-10
        ns = node_set_from_grid(d)
        for node in ns.nodes:
            ell = fundamental_polynomial(d, node)
            vals = np.array([eval_series_2d(ell, o.x, o.y) for o in ns.nodes])
            want = np.array([1.0 if o is node else 0.0 for o in ns.nodes])
            assert np.max(np.abs(vals - want)) <= 1e-10
    report(3, "polynomial reproduction and cardinal-function identity")


def test_c04_mean_operator_properties():
    rng = np.random.default_rng(7)
    for n in (1, 2, 4, 8, 16):
        t = sample_params(n)
        samples = rng.uniform(-1, 1, 6 * n)
        # degree bound: no spectral content above 4n - 1
        grid = 16 * n
        phis = 2 * np.pi * np.arange(grid) / grid
        spectrum = np.abs(np.fft.rfft(vdv_apply_1d(samples, n, phis))) / grid
        assert np.max(spectrum[4 * n :]) <= 1e-9 * max(1.0, spectrum.max())
        # interpolation at the sample parameters
        assert np.max(np.abs(vdv_apply_1d(samples, n, t) - samples)) <= 1e-9
        # reproduction of order <= 2n polynomials, including the edge mode
        coeff = rng.uniform(-1, 1, 2 * n + 1)
        angles = np.linspace(0, 2 * np.pi, 101)

        def trig(phi):
            return sum(c * np.cos(k * phi) for k, c in enumerate(coeff)) + np.cos(2 * n * phi)

        got = vdv_apply_1d(trig(t), n, angles)
        assert np.max(np.abs(got - trig(angles))) <= 1e-9
    report(4, "mean-operator degree bound, interpolation, reproduction", "orders 1..16")


def test_c05_node_norm_stability():
    pairs = [make_degree_pair(3, 2), make_degree_pair(7, 5), make_degree_pair(13, 12)]
    bands2 = [mz_ratio(d, 2.0, trials=200, seed=42) for d in pairs]
    mins = [b.ratio_min for b in bands2]
    maxs = [b.ratio_max for b in bands2]
    assert max(mins) / min(mins) < 2.0, f"p=2 lower endpoints spread: {mins}"
    assert max(maxs) / min(maxs) < 2.0, f"p=2 upper endpoints spread: {maxs}"

    bands1 = [mz_ratio(d, 1.0, trials=200, seed=42) for d in pairs]
    log_prod = [math.log(d.m + 1) * math.log(d.n + 1) for d in pairs]
    base = bands1[0].ratio_min
    for band, lp in zip(bands1[1:], log_prod[1:]):
        floor = 0.5 * base * (log_prod[0] / lp)
        assert band.ratio_min >= floor, (
            f"p=1 lower endpoint {band.ratio_min:.4f} fell below permitted {floor:.4f}"
        )
    report(5, "two-sided node-norm comparability bands", f"p=2 bands {min(mins):.3f}..{max(maxs):.3f}")


def test_c06_operator_norm_trend():
    start = time.monotonic()
    ratios = []
    for k in (4, 8, 16, 32, 64):
        d = make_degree_pair(k, k + 1)
        value = lebesgue_constant(d, 256)
        ratios.append(value / (math.log(d.m + 1) * math.log(d.n + 1)))
    elapsed = time.monotonic() - start
    assert ratios[-1] / ratios[0] < 2.0
    assert elapsed < 60.0, f"operator-norm scan took {elapsed:.1f}s (limit 60s)"
    report(6, "operator norm grows no faster than the log product",
           f"last/first={ratios[-1] / ratios[0]:.3f}, {elapsed:.1f}s")


def test_c07_step_function_rates(step_rates):
    records, elapsed = step_rates
    slope1 = fit_rate(records[1.0], experiment="hbv_step:p1").fitted_slope
    slope2 = fit_rate(records[2.0], experiment="hbv_step:p2").fitted_slope
    assert slope1 <= -0.85, f"p=1 slope {slope1:.3f} (target -1, bound -0.85)"
    assert slope2 <= -0.40, f"p=2 slope {slope2:.3f} (target -0.5, bound -0.40)"
    assert elapsed < 120.0, f"step rate experiment took {elapsed:.1f}s (limit 120s)"
    report(7, "step-function error rates", f"slopes {slope1:.3f} (p=1), {slope2:.3f} (p=2), {elapsed:.0f}s")


def test_c08_kink_function_rate():
    records = rate_records(get("kink_xy"), PADUA_8_128, (2.0,))
    slope = fit_rate(records[2.0], experiment="kink_xy:p2").fitted_slope
    assert slope <= -1.3, f"kink p=2 slope {slope:.3f} (target -1.5, bound -1.3)"
    report(8, "smooth-with-BV-derivative error rate", f"slope {slope:.3f}")


def test_c09_mean_operator_step_rates():
    f = get("torus_step")
    slopes = {}
    for p in (1.0, 2.0):
        records = []
        for n in (8, 16, 32, 64, 128):
            samples = f.eval(sample_params(n))
            norm = torus_norm_1d(
                lambda phis, n=n, s=samples: f.eval(phis) - vdv_apply_1d(s, n, phis), [p]
            )[p]
            records.append((n, n, norm))
        slopes[p] = fit_rate(records, experiment=f"torus_step:p{p:g}").fitted_slope
    assert slopes[1.0] <= -0.85, f"p=1 slope {slopes[1.0]:.3f}"
    assert slopes[2.0] <= -0.40, f"p=2 slope {slopes[2.0]:.3f}"
    report(9, "mean-operator step rates", f"slopes {slopes[1.0]:.3f}, {slopes[2.0]:.3f}")


def test_c10_analytic_decay():
    f = get("cos_3x_2y")
    d = make_degree_pair(32, 33)
    ip = interpolate(f, d)
    err = interp_error_norms(f, ip, [2.0], tol=1e-6)[2.0]
    assert err < 1e-8, f"analytic error at (32,33): {err:.3e}"
    report(10, "analytic function reaches rounding-level error", f"{err:.2e}")


def test_c11_csv_determinism(tmp_path):
    def run(threads: int, tag: str):
        out = tmp_path / f"mz_{tag}.csv"
        env = dict(os.environ)
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            env[var] = str(threads)
        subprocess.run(
            [sys.executable, "-m", "lcinterp", "mz", "--pair", "7,5", "--p", "2",
             "--trials", "20", "--seed", "42", "--out", str(out), "--no-plot"],
            check=True, env=env, capture_output=True,
        )
        return out.read_bytes()

    single_a = run(1, "1a")
    single_b = run(1, "1b")
    multi = run(4, "4")
    assert single_a == single_b, "rerun with identical config changed the CSV"
    assert single_a == multi, "thread count changed the CSV bytes"
    report(11, "CSV output is byte-identical across reruns and thread counts")
