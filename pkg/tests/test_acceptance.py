"""Acceptance suite: one test per release criterion.

Each test prints a single "criterion N (<name>): PASS|FAIL" line; run with
``pytest -s tests/test_acceptance.py`` to see them on a green run.
"""

import math
import statistics
import time

import numpy as np
import pytest

from sliceblur import approx, oracle
from sliceblur.approx import SIGMA0, Partition, SliceKernel
from sliceblur.cli import main
from sliceblur.filtering import separable_filter_2d, slice_filter_1d
from sliceblur.oracle import direct_convolve_1d, exact_gaussian_2d, psnr
from sliceblur.params import load_params
from sliceblur.synth import make_image


def _report(num, name, ok):
    print(f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({name}) failed"


def _table_kernel(k, sigma):
    part, sigma0 = approx.table_defaults(k)
    return approx.scale_to_sigma(approx.to_slices(part, sigma0), sigma)


def _random_kernel(rng, n):
    k = int(rng.integers(1, 6))
    max_p = min(n - 1, 40)
    k = min(k, max_p + 1)
    radii = np.sort(rng.choice(np.arange(max_p + 1), size=k, replace=False))
    weights = rng.uniform(0.1, 1.0, size=k)
    return SliceKernel(radii, weights).normalized()


def _median_s(fn, reps=5):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_criterion_1_oracle_equivalence():
    rng = np.random.default_rng(100)
    start = time.perf_counter()
    ok = True
    for _ in range(200):
        n = int(rng.integers(8, 513))
        kern = _random_kernel(rng, n)
        sig = rng.random(n)
        fast = slice_filter_1d(sig, kern)
        dense = direct_convolve_1d(sig, kern.dense(), "replicate")
        ok &= bool(np.abs(fast - dense).max() <= 1e-10)
    for _ in range(50):
        img = rng.random((64, 64))
        kern = _random_kernel(rng, 64)
        fast = separable_filter_2d(img, kern)
        rows = np.apply_along_axis(
            lambda r: direct_convolve_1d(r, kern.dense()), 1, img
        )
        dense = np.apply_along_axis(
            lambda c: direct_convolve_1d(c, kern.dense()), 0, rows
        )
        ok &= bool(np.abs(fast - dense).max() <= 1e-9)
    ok &= (time.perf_counter() - start) < 30.0
    _report(1, "oracle equivalence", ok)


def test_criterion_2_op_counts():
    rng = np.random.default_rng(101)
    img = rng.random((128, 128))
    ok = True
    for k in (1, 3, 5):
        if k == 1:
            kern = SliceKernel((5,), (1.0 / 11.0,))
        else:
            kern = _table_kernel(k, 8.0)
        counter = oracle.count_ops(img, kern)
        ok &= counter.adds_per_px == 4 * k and counter.muls_per_px == 2 * k
    _report(2, "per-pixel op counts 4k/2k", ok)


def test_criterion_3_sigma_independent_cost():
    img = make_image("one-over-f", 1024, 1024, seed=42)
    k5, k50 = _table_kernel(3, 5.0), _table_kernel(3, 50.0)
    t5 = _median_s(lambda: separable_filter_2d(img, k5))
    t50 = _median_s(lambda: separable_filter_2d(img, k50))
    fast_ratio = max(t5, t50) / min(t5, t50)
    e5 = _median_s(lambda: exact_gaussian_2d(img, 5.0), reps=3)
    e50 = _median_s(lambda: exact_gaussian_2d(img, 50.0), reps=3)
    exact_ratio = e50 / e5
    ok = fast_ratio <= 1.25 and exact_ratio >= 5.0
    print(f"  fast sigma ratio {fast_ratio:.3f}, exact sigma ratio {exact_ratio:.2f}")
    _report(3, "sigma-independent wall time", ok)


def test_criterion_4_optimizer_reproduces_defaults(tmp_path):
    pfile = tmp_path / "params.txt"
    assert main(["optimize", "--k", "3", "--model", "qf", "--params", str(pfile)]) == 0
    loaded = load_params(pfile)
    within = np.all(
        np.abs(loaded.partition.breakpoints - np.array((23, 46, 76))) <= 2
    )
    target = approx.sample_gaussian(SIGMA0, 100)
    model = approx.build_autocorr(99)
    builtin, _ = approx.table_defaults(3)
    # builtin constants are on the unit-peak scale; move to the unit-sum
    # convention of the sampled target before comparing errors
    ref = Partition(builtin.breakpoints, builtin.constants * target.values[0])
    e2_ref = approx.quadratic_error(
        target, approx.partition_profile(ref, 100), model
    )
    ok = bool(within) and loaded.e2 <= e2_ref
    _report(4, "optimizer reproduces default parameters", ok)


def test_criterion_5_accuracy_ordering():
    target = approx.sample_gaussian(SIGMA0, 100)
    l2_part = approx.search_partitions(target, 4, approx.identity_model(99))
    l2_base = approx.to_slices(l2_part, SIGMA0)
    ok_mono = True
    qf4, l24 = [], []
    for seed in range(10):
        img = make_image("one-over-f", 512, 512, seed=seed)
        for sigma in (10.0, 20.0, 40.0):
            ref = exact_gaussian_2d(img, sigma)
            scores = {
                k: psnr(separable_filter_2d(img, _table_kernel(k, sigma)), ref)
                for k in (3, 4, 5)
            }
            ok_mono &= scores[5] >= scores[4] >= scores[3]
            qf4.append(scores[4])
            l24.append(
                psnr(
                    separable_filter_2d(
                        img, approx.scale_to_sigma(l2_base, sigma)
                    ),
                    ref,
                )
            )
    qf_beats_l2 = statistics.mean(qf4) >= statistics.mean(l24)
    print(
        f"  monotone in k: {ok_mono}; mean PSNR k=4 qf {statistics.mean(qf4):.2f} dB"
        f" vs l2 {statistics.mean(l24):.2f} dB"
    )
    _report(5, "accuracy ordering", ok_mono and qf_beats_l2)


def test_criterion_6_constant_roundtrip(tmp_path):
    src = tmp_path / "const.pgm"
    dst = tmp_path / "out.pgm"
    assert main(["synth", "constant", str(src), "--width", "512", "--height", "512"]) == 0
    reference = src.read_bytes()
    ok = True
    for k in (3, 4, 5):
        for sigma in (2, 10, 50):
            assert main(
                ["filter", str(src), str(dst), "--sigma", str(sigma), "--k", str(k)]
            ) == 0
            ok &= dst.read_bytes() == reference
    _report(6, "constant image round-trip", ok)


def test_criterion_7_autocorrelation_ratio():
    model = approx.build_autocorr(100, 16.5)
    ratio = model.phi[100] / model.phi[200]  # Phi_0 / Phi_100
    ok = abs(ratio - 4.0 / 3.0) / (4.0 / 3.0) < 0.05
    print(f"  Phi_0 / Phi_100 = {ratio:.4f}")
    _report(7, "autocorrelation DC ratio", ok)


def test_criterion_8_gaussian_truncation():
    # NOTE: the stated 1e-4 bound is unattainable for any sampling of the
    # Gaussian: the tail mass beyond radius ceil(pi * sigma) ~ 3.2 sigma is
    # about 1.5e-3 (2 * Q(pi) = 1.7e-3 in the continuous limit).  The bound
    # is asserted as stated; the measured fractions are printed alongside.
    ok = True
    for sigma in (2.0, 10.0, 50.0):
        r = math.ceil(math.pi * sigma)
        t = np.arange(-40 * int(sigma), 40 * int(sigma) + 1)
        v = np.exp(-(t**2) / (2.0 * sigma * sigma))
        outside = v[np.abs(t) > r].sum() / v.sum()
        print(f"  sigma {sigma}: tail mass fraction {outside:.3e}")
        ok &= outside < 1e-4
    _report(8, "Gaussian truncation mass", ok)
