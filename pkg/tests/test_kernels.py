import os
import subprocess
import sys

import numpy as np
import pytest

from hardyops import _kernels as K

pytestmark = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


def rand(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.mark.parametrize("n", [1, 7, 64])
def test_series_parity(rng, n):
    a, b = rand(rng, n), rand(rng, n)
    b[0] = 2.0
    assert np.allclose(K.series_mul_numba(a, b, n), K.series_mul_numpy(a, b, n), atol=1e-13)
    assert np.allclose(K.series_div_numba(a, b, n), K.series_div_numpy(a, b, n), rtol=1e-12, atol=1e-12)
    small = 0.3 * a
    assert np.allclose(K.series_exp_numba(small, n), K.series_exp_numpy(small, n), rtol=1e-12, atol=1e-14)


def test_series_identities(rng):
    a = rand(rng, 32)
    b = rand(rng, 32)
    b[0] = 3.0
    q = K.series_div(a, b, 32)
    assert np.allclose(K.series_mul(q, b, 32), a, atol=1e-10)
    e = K.series_exp(np.array([0, 1], dtype=complex), 12)
    assert np.allclose(e, [1 / np.prod(np.arange(1, k + 1)) for k in range(12)], rtol=1e-14)


@pytest.mark.parametrize("n", [2, 33, 128])
def test_power_columns_parity(rng, n):
    t = rand(rng, n) * 0.1
    t[0] = 0
    t[-3:] = 0
    start = rand(rng, n)
    assert np.allclose(K.power_columns_numba(start, t, n), K.power_columns_numpy(start, t, n), atol=1e-14)


def test_power_iteration_parity(rng):
    a = rand(rng, 40 * 40).reshape(40, 40)
    v0 = rand(rng, 40)
    lam1, _, _, ok1 = K.power_iteration_gram_numba(a, v0, 1e-12, 100000)
    lam2, _, _, ok2 = K.power_iteration_gram_numpy(a, v0, 1e-12, 100000)
    top = np.linalg.norm(a, 2) ** 2
    assert ok1 and ok2
    assert lam1 == pytest.approx(top, rel=1e-9) and lam2 == pytest.approx(top, rel=1e-9)


def _backend_with(value):
    env = dict(os.environ)
    env.pop("HARDYOPS_DISABLE_NUMBA", None)
    if value is not None:
        env["HARDYOPS_DISABLE_NUMBA"] = value
    code = "from hardyops import _kernels; print(_kernels.backend())"
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                          check=True).stdout.strip()


def test_backend_selection():
    assert _backend_with(None) == "numba"
    assert _backend_with("0") == "numba"
    assert _backend_with("1") == "numpy"
