"""Both kernel backends against plain-Python references."""
import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from ffdist.convolution import NTT_PRIMES, ntt


@pytest.mark.parametrize("n", [1, 2, 7, 64, 101])
def test_cyclic_shift_or(backend, n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        bits = rng.random(n) < 0.3
        shifts = rng.choice(n, size=rng.integers(0, n + 1), replace=False).astype(np.int64)
        got = backend.cyclic_shift_or(shifts, bits)
        want = oracles.sumset(set(shifts.tolist()), set(np.flatnonzero(bits).tolist()), n)
        assert set(np.flatnonzero(got).tolist()) == want


@pytest.mark.parametrize("n", [1, 3, 16, 31])
def test_cyclic_convolution(backend, n):
    rng = np.random.default_rng(n)
    f = rng.integers(0, 100, n)
    g = rng.integers(0, 100, n)
    assert backend.cyclic_convolution(f, g).tolist() == oracles.cyclic_conv(f.tolist(), g.tolist())


@pytest.mark.parametrize("n", [1, 2, 8, 64])
def test_ntt_round_trip_and_definition(backend, monkeypatch, n):
    import ffdist.convolution as conv
    monkeypatch.setattr(conv.kernels, "ntt_butterflies", backend.ntt_butterflies)
    mod, root = NTT_PRIMES[0]
    rng = np.random.default_rng(n)
    a = rng.integers(0, mod, n)
    A = ntt(a, mod, root)
    w = pow(root, (mod - 1) // n, mod)
    direct = [sum(int(a[j]) * pow(w, i * j, mod) for j in range(n)) % mod for i in range(n)]
    assert A.tolist() == direct
    assert ntt(A, mod, root, inverse=True).tolist() == a.tolist()


@pytest.mark.parametrize("p", [3, 7, 13])
def test_pair_distance_mark(backend, p):
    rng = np.random.default_rng(p)
    for d in (1, 2, 3):
        pts = rng.integers(0, p, size=(15, d))
        got = backend.pair_distance_mark(np.ascontiguousarray(pts), p)
        assert set(np.flatnonzero(got).tolist()) == oracles.distance_set(pts.tolist(), p)


def test_backends_agree_on_large_inputs():
    from ffdist.kernels import numba_kernels as nb, numpy_kernels as npk
    rng = np.random.default_rng(0)
    bits = rng.random(10007) < 0.1
    shifts = rng.choice(10007, 300, replace=False).astype(np.int64)
    assert np.array_equal(nb.cyclic_shift_or(shifts, bits), npk.cyclic_shift_or(shifts, bits))
    f = rng.integers(0, 1000, 2000)
    g = rng.integers(0, 1000, 2000)
    assert np.array_equal(nb.cyclic_convolution(f, g), npk.cyclic_convolution(f, g))


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("", "numba")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, FFDIST_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import ffdist.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == expected


def test_numpy_backend_end_to_end():
    code = (
        "from ffdist import *\n"
        "F = get_field(7)\n"
        "A = FSet.from_elements(F, [0, 1, 2])\n"
        "print(distance_set_product(ProductSpec(A, 2)).elements().tolist())\n"
    )
    env = dict(os.environ, FFDIST_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "[0, 1, 2, 4, 5]"


def test_benchmark_quick_runs(capsys):
    import runpy
    path = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    bench = runpy.run_path(path, run_name="bench")
    assert bench["main"](["--quick", "--repeat", "1"]) == 0
    out = capsys.readouterr().out
    assert out.count("x\n") == 4
