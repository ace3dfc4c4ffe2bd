"""Hot numeric kernels: truncated power-series arithmetic and power iteration.

Every kernel exists twice, a numba ``@njit`` version and a pure-numpy
version with identical semantics. The module-level names (``power_columns``,
``series_mul`` ...) point at the numba versions unless numba is missing or
``HARDYOPS_DISABLE_NUMBA`` is set to a non-empty value other than ``0``.
All arrays are complex128 and one-dimensional unless stated otherwise.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("HARDYOPS_DISABLE_NUMBA", "") in ("", "0")


# --------------------------------------------------------------------------
# numpy reference path
# --------------------------------------------------------------------------

def series_mul_numpy(a, b, n):
    return np.convolve(a[:n], b[:n])[:n].astype(np.complex128)


def series_div_numpy(a, b, n):
    """Coefficients of a/b to order n; requires b[0] != 0."""
    out = np.zeros(n, dtype=np.complex128)
    a = _pad(a, n)
    b = _pad(b, n)
    inv = 1.0 / b[0]
    for k in range(n):
        acc = a[k]
        if k:
            acc -= np.dot(b[1:k + 1], out[k - 1::-1])
        out[k] = acc * inv
    return out


def series_exp_numpy(a, n):
    """Coefficients of exp(a) to order n, using n*h_n = sum k*a_k*h_{n-k}."""
    a = _pad(a, n)
    out = np.zeros(n, dtype=np.complex128)
    out[0] = np.exp(a[0])
    ka = np.arange(n) * a
    for m in range(1, n):
        out[m] = np.dot(ka[1:m + 1], out[m - 1::-1]) / m
    return out


def power_columns_numpy(start, t, n):
    """Matrix whose column j holds the first n coefficients of start * t**j."""
    out = np.zeros((n, n), dtype=np.complex128)
    out[:, 0] = _pad(start, n)
    t = _pad(t, n)
    for j in range(1, n):
        out[:, j] = np.convolve(out[:, j - 1], t)[:n]
    return out


def power_iteration_gram_numpy(a, v0, tol, max_iter):
    """Largest eigenvalue of a^H a by power iteration.

    Stops when the Aitken-extrapolated error of the Rayleigh quotient drops
    below ``tol`` relative. Returns (lam, v, iterations, converged).
    """
    ah = np.ascontiguousarray(a.conj().T)
    v = v0 / np.linalg.norm(v0)
    lam = 0.0
    dprev = -1.0
    for it in range(1, max_iter + 1):
        u = ah @ (a @ v)
        new = np.vdot(v, u).real
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return 0.0, v, it, False
        v = u / nu
        d = abs(new - lam)
        if d == 0.0 and it > 1:
            return new, v, it, True
        if dprev > 0.0:
            q = min(d / dprev, 0.999999)
            if d * q / (1.0 - q) <= tol * new:
                return new, v, it, True
        dprev = d
        lam = new
    return lam, v, max_iter, False


def _pad(x, n):
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[0] >= n:
        return x[:n]
    out = np.zeros(n, dtype=np.complex128)
    out[: x.shape[0]] = x
    return out


# --------------------------------------------------------------------------
# numba path
# --------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _pad_nb(x, n):
        out = np.zeros(n, dtype=np.complex128)
        m = min(n, x.shape[0])
        for i in range(m):
            out[i] = x[i]
        return out

    @njit(cache=True)
    def series_mul_numba(a, b, n):
        a = _pad_nb(a, n)
        b = _pad_nb(b, n)
        out = np.zeros(n, dtype=np.complex128)
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                out[i + j] += ai * b[j]
        return out

    @njit(cache=True)
    def series_div_numba(a, b, n):
        a = _pad_nb(a, n)
        b = _pad_nb(b, n)
        out = np.zeros(n, dtype=np.complex128)
        inv = 1.0 / b[0]
        for k in range(n):
            acc = a[k]
            for i in range(1, k + 1):
                acc -= b[i] * out[k - i]
            out[k] = acc * inv
        return out

    @njit(cache=True)
    def series_exp_numba(a, n):
        a = _pad_nb(a, n)
        out = np.zeros(n, dtype=np.complex128)
        out[0] = np.exp(a[0])
        for m in range(1, n):
            acc = 0j
            for k in range(1, m + 1):
                acc += k * a[k] * out[m - k]
            out[m] = acc / m
        return out

    @njit(cache=True)
    def power_columns_numba(start, t, n):
        t = _pad_nb(t, n)
        # rows of the transpose are contiguous, one per power
        out = np.zeros((n, n), dtype=np.complex128)
        s = _pad_nb(start, n)
        for i in range(n):
            out[0, i] = s[i]
        lead = 0
        while lead < n and t[lead] == 0:
            lead += 1
        last = n - 1
        while last > lead and t[last] == 0:
            last -= 1
        for j in range(1, n):
            prev = out[j - 1]
            row = out[j]
            for i in range(n):
                p = prev[i]
                if p == 0:
                    continue
                top = min(last, n - 1 - i)
                for k in range(lead, top + 1):
                    row[i + k] += p * t[k]
        return out.T.copy()

    @njit(cache=True)
    def power_iteration_gram_numba(a, v0, tol, max_iter):
        ah = np.ascontiguousarray(a.conj().T)
        v = v0 / np.linalg.norm(v0)
        lam = 0.0
        dprev = -1.0
        for it in range(1, max_iter + 1):
            u = ah @ (a @ v)
            new = np.vdot(v, u).real
            nu = np.linalg.norm(u)
            if nu == 0.0:
                return 0.0, v, it, False
            v = u / nu
            d = abs(new - lam)
            if d == 0.0 and it > 1:
                return new, v, it, True
            if dprev > 0.0:
                q = min(d / dprev, 0.999999)
                if d * q / (1.0 - q) <= tol * new:
                    return new, v, it, True
            dprev = d
            lam = new
        return lam, v, max_iter, False


def _select(name):
    if USE_NUMBA:
        return globals()[name + "_numba"]
    return globals()[name + "_numpy"]


def _as_c128(*arrays):
    return tuple(np.ascontiguousarray(x, dtype=np.complex128) for x in arrays)


def series_mul(a, b, n):
    a, b = _as_c128(a, b)
    return _select("series_mul")(a, b, int(n))


def series_div(a, b, n):
    a, b = _as_c128(a, b)
    if b.shape[0] == 0 or b[0] == 0:
        raise ZeroDivisionError("series division by a series vanishing at 0")
    return _select("series_div")(a, b, int(n))


def series_exp(a, n):
    (a,) = _as_c128(a)
    return _select("series_exp")(a, int(n))


def power_columns(start, t, n):
    start, t = _as_c128(start, t)
    return _select("power_columns")(start, t, int(n))


def power_iteration_gram(a, v0, tol, max_iter):
    a, v0 = _as_c128(a, v0)
    lam, v, it, ok = _select("power_iteration_gram")(a, v0, float(tol), int(max_iter))
    return float(lam), v, int(it), bool(ok)


def backend():
    """Name of the active kernel backend."""
    return "numba" if USE_NUMBA else "numpy"
