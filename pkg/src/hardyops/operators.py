"""Finite sections of T_psi, C_phi and W_{psi,phi} in the monomial basis of H^2.

Column j of the composition section holds the Taylor coefficients of phi**j
(the j-th power, not the j-th iterate), because C_phi z**j = phi**j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import AnchorNotInterior, NotFixedPoint
from .symbols.dynamics import FIXED_POINT_TOL, REFUTED, self_map_check
from .symbols.maps import AnalyticMap, as_map

COMPOSITION = "composition"
TOEPLITZ = "toeplitz"
WEIGHTED = "weighted_composition"
GENERAL = "general"


@dataclass(frozen=True, eq=False)
class OperatorTruncation:
    matrix: np.ndarray
    kind: str = GENERAL
    symbols: tuple = field(default=())

    @property
    def order(self):
        return self.matrix.shape[0]

    @property
    def H(self):
        return self.matrix.conj().T

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def as_matrix(a):
    if isinstance(a, OperatorTruncation):
        return a.matrix
    return np.asarray(a, dtype=np.complex128)


def truncation(matrix):
    """Wrap an explicit square matrix as a general truncation."""
    m = np.array(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("truncations are square matrices")
    return OperatorTruncation(m, GENERAL)


def _check_order(n):
    if n < 2:
        raise ValueError("truncation order must be at least 2")


def compose_matrix(phi: AnalyticMap, n: int) -> OperatorTruncation:
    phi = as_map(phi)
    _check_order(n)
    if self_map_check(phi) == REFUTED:
        raise ValueError(f"{phi!r} is not a self-map of the disk")
    t = phi.taylor(n)
    e0 = np.zeros(n, dtype=np.complex128)
    e0[0] = 1.0
    m = _kernels.power_columns(e0, t, n)
    return OperatorTruncation(m, COMPOSITION, (phi,))


def toeplitz_matrix(psi: AnalyticMap, n: int) -> OperatorTruncation:
    psi = as_map(psi)
    _check_order(n)
    t = psi.taylor(n)
    idx = np.subtract.outer(np.arange(n), np.arange(n))
    m = np.where(idx >= 0, t[np.clip(idx, 0, None)], 0).astype(np.complex128)
    return OperatorTruncation(m, TOEPLITZ, (psi,))


def wco_matrix(psi: AnalyticMap, phi: AnalyticMap, n: int, check=True) -> OperatorTruncation:
    """Section of T_psi C_phi.

    Built as the product of the Toeplitz and composition sections; with
    ``check`` the running product psi * phi**j is formed independently and the
    two must agree to 1e-12 relative to the largest entry.
    """
    psi, phi = as_map(psi), as_map(phi)
    c = compose_matrix(phi, n).matrix
    t = toeplitz_matrix(psi, n).matrix
    m = t @ c
    if check:
        alt = _kernels.power_columns(psi.taylor(n), phi.taylor(n), n)
        scale = max(1.0, float(np.max(np.abs(m))))
        err = float(np.max(np.abs(alt - m)))
        if err > 1e-12 * scale:
            raise ArithmeticError(f"assembly paths disagree by {err:.3e}")
    return OperatorTruncation(m, WEIGHTED, (psi, phi))


def kernel_vector(a, n):
    a = complex(a)
    if abs(a) >= 1:
        raise AnchorNotInterior(f"{a} is not in the open disk")
    return np.conj(a) ** np.arange(n)


def adjoint_kernel_residual(psi, phi, a, n):
    """|| W_N^* k - conj(psi(a)) k || for the truncated kernel k at a fixed point a."""
    psi, phi = as_map(psi), as_map(phi)
    a = complex(a)
    if abs(a) >= 1:
        raise AnchorNotInterior("boundary kernels are not in H^2")
    if abs(phi.eval(a) - a) > FIXED_POINT_TOL:
        raise NotFixedPoint(f"phi({a}) != {a}")
    w = wco_matrix(psi, phi, n, check=False).matrix
    k = kernel_vector(a, n)
    return float(np.linalg.norm(w.conj().T @ k - np.conj(psi.eval(a)) * k))


def hermitian_residual(a):
    m = as_matrix(a)
    return float(np.linalg.norm(m - m.conj().T, 2))


def unitarity_residual(a, block=None):
    """|| U^* U - I || on the leading block (default: an eighth of the order).

    Columns z**j of a section lose mass past the cut as j grows, so only a
    leading block is meaningful.
    """
    m = as_matrix(a)
    n = m.shape[0]
    b = block or max(1, n // 8)
    full = m.conj().T @ m
    return float(np.linalg.norm(full[:b, :b] - np.eye(b), 2))
