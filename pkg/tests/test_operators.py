import math

import numpy as np
import pytest

from hardyops.errors import AnchorNotInterior, NotFixedPoint
from hardyops.expr import parse_symbol as P
from hardyops.operators import (
    COMPOSITION,
    TOEPLITZ,
    WEIGHTED,
    adjoint_kernel_residual,
    compose_matrix,
    hermitian_residual,
    kernel_vector,
    toeplitz_matrix,
    truncation,
    unitarity_residual,
    wco_matrix,
)
from hardyops.spectra import operator_norm_estimate
from hardyops.symbols import Polynomial, canonical_weight, conjugation_pair, mobius_fixing, sup_norm


def test_compose_affine():
    c = compose_matrix(P("(z+1)/2"), 2)
    assert c.kind == COMPOSITION
    assert np.allclose(c.matrix, [[1, 0.5], [0, 0.5]], atol=1e-15)


def test_compose_columns_are_powers():
    phi = P("z/(2-z)")
    c = compose_matrix(phi, 8).matrix
    t = phi.taylor(8)
    assert np.allclose(c[:, 0], np.eye(8)[0])
    assert np.allclose(c[:, 1], t)
    assert np.allclose(c[:, 2], np.convolve(t, t)[:8])


def test_compose_rejects_non_self_map():
    with pytest.raises(ValueError):
        compose_matrix(P("2*z"), 4)


def test_toeplitz_lower_triangular():
    t = toeplitz_matrix(P("1/(2-z)"), 4)
    assert t.kind == TOEPLITZ
    expected = np.array([[2.0**-(i - j + 1) if i >= j else 0 for j in range(4)] for i in range(4)])
    assert np.allclose(t.matrix, expected, atol=1e-15)
    assert np.allclose(toeplitz_matrix(P("3"), 3).matrix, 3 * np.eye(3))


def test_wco_small_example_symmetric():
    # the z coefficient of 1/(2-z)^2 is 1/4
    w = wco_matrix(P("1/(2-z)"), P("1/(2-z)"), 2)
    assert w.kind == WEIGHTED
    assert np.allclose(w.matrix, [[0.5, 0.25], [0.25, 0.25]], atol=1e-15)
    big = wco_matrix(P("1/(2-z)"), P("1/(2-z)"), 64).matrix
    assert hermitian_residual(big) <= 1e-12


def test_order_validation():
    with pytest.raises(ValueError):
        wco_matrix(P("1"), P("z/2"), 1)
    with pytest.raises(ValueError):
        truncation([[1, 2, 3]])


def test_triangular_diagonal():
    # phi(0) = 0 makes the section lower triangular with psi(0) phi'(0)^j on the diagonal
    psi, phi = P("exp(z)"), P("z/(2-z)")
    w = wco_matrix(psi, phi, 32).matrix
    assert np.allclose(np.triu(w, 1), 0, atol=1e-15)
    assert np.allclose(np.diag(w), 0.5 ** np.arange(32), rtol=1e-12)


def test_assembly_cross_check_random_polynomials():
    rng = np.random.default_rng(11)
    for _ in range(50):
        c = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        phi = Polynomial(0.9 * c / np.abs(c).sum())
        psi = Polynomial(rng.standard_normal(5) + 1j * rng.standard_normal(5))
        w = wco_matrix(psi, phi, 24, check=True).matrix
        direct = toeplitz_matrix(psi, 24).matrix @ compose_matrix(phi, 24).matrix
        assert np.allclose(w, direct, atol=1e-12)


def test_kernel_vector():
    k = kernel_vector(0.5, 64)
    assert np.linalg.norm(k) == pytest.approx(math.sqrt(4 / 3), rel=1e-12)
    assert np.allclose(kernel_vector(0.5j, 3), [1, -0.5j, -0.25])
    with pytest.raises(AnchorNotInterior):
        kernel_vector(1.0, 4)


def test_adjoint_kernel_residual_canonical_weight():
    a = 0.5
    phi = mobius_fixing(a, 0.5)
    psi = canonical_weight(phi, a, 1.0)
    assert adjoint_kernel_residual(psi, phi, a, 256) <= 1e-6
    assert adjoint_kernel_residual(P("exp(z)"), P("z/2"), 0, 32) <= 1e-12


def test_adjoint_kernel_residual_errors():
    with pytest.raises(NotFixedPoint):
        adjoint_kernel_residual(P("1"), P("z/2"), 0.5, 16)
    with pytest.raises(AnchorNotInterior):
        adjoint_kernel_residual(P("1"), P("(z+1)/2"), 1.0, 16)


def test_unitarity_of_conjugation_pair():
    psi, phi = conjugation_pair(0.5)
    u = wco_matrix(psi, phi, 128).matrix
    assert unitarity_residual(u) <= 1e-8
    assert unitarity_residual(compose_matrix(P("z/2"), 32)) > 0.5


def test_toeplitz_norm_below_sup_norm():
    for text in ("exp(z)", "1/(2-z)", "1+z+z*z/3"):
        psi = P(text)
        est = operator_norm_estimate(toeplitz_matrix(psi, 128))
        assert est <= sup_norm(psi).value * (1 + 1e-9)
