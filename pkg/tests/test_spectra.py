import math

import numpy as np
import pytest

from hardyops.errors import HypothesisUnmet, UnsupportedRepresentation
from hardyops.expr import parse_symbol as P
from hardyops.operators import compose_matrix, wco_matrix
from hardyops.spectra import (
    cphi_essential_spectral_radius,
    cphi_norm_bounds,
    cphi_spectral_radius_theory,
    eigenvalue_list_theory,
    essential_norm_bound,
    essential_norm_lower,
    gelfand_sequence,
    largest_singular_value,
    numerical_range,
    operator_norm_estimate,
    polygon_convexity_defect,
    spectral_radius_matrix,
    wco_spectral_radius_theory,
)
from hardyops.symbols import Polynomial, denjoy_wolff

SHIFT = np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.mark.parametrize(
    "m, expected",
    [(np.diag([1, 0.5, 0.25]), 1.0), (np.array([[0, 2], [0, 0]]), 2.0), (np.diag([3, -1]), 3.0)],
)
def test_norm_small(m, expected):
    est = largest_singular_value(m)
    assert est.converged
    assert est.value == pytest.approx(expected, rel=1e-9)


def test_norm_zero_matrix():
    assert operator_norm_estimate(np.zeros((3, 3))) == 0.0


def test_norm_composition_sandwich():
    lo, hi = cphi_norm_bounds(P("(z+1)/2"))
    v = operator_norm_estimate(compose_matrix(P("(z+1)/2"), 256))
    assert lo - 0.02 <= v <= hi + 1e-9


@pytest.mark.parametrize("text", ["z/2", "z/(2-z)", "(z+z*z)/4"])
def test_norm_one_when_origin_fixed(text):
    for n in (16, 64, 256):
        assert operator_norm_estimate(compose_matrix(P(text), n)) == pytest.approx(1.0, abs=1e-9)


def test_norm_bounds_examples():
    assert cphi_norm_bounds(P("z/(2-z)")) == (1.0, 1.0)
    lo, hi = cphi_norm_bounds(P("(z+1)/2"))
    assert (lo, hi) == pytest.approx((1.15470, 1.73205), abs=1e-5)
    lo, hi = cphi_norm_bounds(P("0.9"))
    assert (lo, hi) == pytest.approx((2.29416, 4.35890), abs=1e-5)


def test_spectral_radius_examples():
    assert spectral_radius_matrix(SHIFT) == 0.0
    assert spectral_radius_matrix(np.diag([3, -1])) == pytest.approx(3.0)
    w = wco_matrix(P("exp(z)"), P("z/2"), 64)
    assert spectral_radius_matrix(w) == pytest.approx(1.0, abs=1e-10)


def test_gelfand_nilpotent():
    g = gelfand_sequence(SHIFT, 4)
    assert g[0] == (1, pytest.approx(1.0))
    assert all(v == 0.0 for _, v in g[1:])
    with pytest.raises(ValueError):
        gelfand_sequence(SHIFT, 65)


def test_gelfand_above_spectral_radius_and_submultiplicative():
    for psi, phi in [("exp(z)", "z/2"), ("2*exp(z)/(2-z)", "z/(2-z)"), ("1/(2-z)", "1/(2-z)")]:
        m = wco_matrix(P(psi), P(phi), 64).matrix
        g = dict(gelfand_sequence(m, 32))
        rho = spectral_radius_matrix(m)
        assert rho <= min(g.values()) + 1e-8
        for k in range(1, 17):
            assert g[2 * k] <= g[k] + 1e-9


def test_numerical_range_shift_block():
    nr = numerical_range(SHIFT, 64)
    assert nr.radius == pytest.approx(0.5, abs=1e-10)
    assert np.allclose(np.abs(nr.points), 0.5, atol=1e-8)
    assert polygon_convexity_defect(nr.points) <= 1e-8


def test_numerical_range_hermitian_segment():
    nr = numerical_range(np.diag([0.0, 1.0]), 32)
    assert nr.radius == pytest.approx(1.0)
    assert np.allclose(nr.points.imag, 0, atol=1e-12)
    assert nr.points.real.min() >= -1e-12 and nr.points.real.max() <= 1 + 1e-12


def test_numerical_range_self_adjoint_section():
    nr = numerical_range(wco_matrix(P("1/(2-z)"), P("1/(2-z)"), 64), 64)
    assert np.max(np.abs(nr.points.imag)) <= 1e-10


def test_numerical_range_angles_validated():
    with pytest.raises(ValueError):
        numerical_range(SHIFT, 8)


def test_convexity_defect_detects_dent():
    square = np.array([1, 1j, -1, -1j])
    assert polygon_convexity_defect(square) <= 0
    assert polygon_convexity_defect(square[::-1]) <= 0
    dented = np.array([1, 0.1 + 0.1j, 1j, -1, -1j])
    assert polygon_convexity_defect(dented) > 0.1


@pytest.mark.parametrize(
    "psi, phi",
    [("exp(z)", "z/2"), ("2*exp(z)/(2-z)", "z/(2-z)"), ("exp(z)", "(z+1)/2"), ("1/(2-z)", "1/(2-z)"),
     ("exp(-z)", "z/(2-z)")],
)
def test_radius_chain(psi, phi):
    for n in (16, 64):
        m = wco_matrix(P(psi), P(phi), n).matrix
        rho = spectral_radius_matrix(m)
        r = numerical_range(m, 64).radius
        nrm = operator_norm_estimate(m)
        assert rho <= r + 1e-9
        assert r <= nrm + 1e-9


def test_cphi_radius_theory():
    assert cphi_spectral_radius_theory(denjoy_wolff(P("z/2"))) == 1.0
    assert cphi_spectral_radius_theory(denjoy_wolff(P("(z+1)/2"))) == pytest.approx(math.sqrt(2))
    assert cphi_spectral_radius_theory(denjoy_wolff(P("1/(2-z)"))) == pytest.approx(1.0, abs=1e-6)


def test_essential_radius_examples():
    e = cphi_essential_spectral_radius(P("z/(2-z)"))
    assert e.value == pytest.approx(2**-0.5, abs=1e-12)
    assert e.establishing_point == pytest.approx(1.0)
    e2 = cphi_essential_spectral_radius(P("z/(4-3*z)"))
    assert e2.value == pytest.approx(e.value**2, abs=1e-10)
    assert cphi_essential_spectral_radius(P("(z+z*z)/4")).value == 0.0


def test_essential_radius_errors():
    with pytest.raises(HypothesisUnmet):
        cphi_essential_spectral_radius(P("(z+1)/2"))
    with pytest.raises(UnsupportedRepresentation):
        cphi_essential_spectral_radius(P("z*exp(z-1)/2"))


def test_essential_norm_lower_examples():
    trace, v = essential_norm_bound(P("1"), P("z/(2-z)"), 1.0)
    vals = [t[1] for t in trace]
    assert v >= 0.70
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
    assert abs(v - 2**-0.5) / 2**-0.5 <= 0.01
    assert essential_norm_lower(P("exp(-z)"), P("z/(2-z)"), 1.0) >= 0.25
    assert essential_norm_lower(P("1"), P("z/2"), 1.0) <= 1e-2


def test_wco_theory_examples():
    t = wco_spectral_radius_theory(P("2*exp(z)/(2-z)"), P("z/(2-z)"))
    assert t.branch == "essential" and t.justified
    assert t.value == pytest.approx(math.sqrt(2) * math.e, rel=1e-9)
    t = wco_spectral_radius_theory(P("exp(-z)"), P("z/(2-z)"))
    assert t.branch == "point" and t.value == pytest.approx(1.0)
    assert t.terms["essential"] == pytest.approx(math.sqrt(2) / (2 * math.e), rel=1e-9)
    t = wco_spectral_radius_theory(P("exp(z)"), P("(z+1)/2"))
    assert t.branch == "boundary"
    assert t.value == pytest.approx(math.e * math.sqrt(2), rel=1e-9)
    t = wco_spectral_radius_theory(P("exp(z)"), P("(z+z*z)/4"))
    assert t.branch == "power_compact" and t.value == pytest.approx(1.0)


def test_wco_theory_blocks_without_uci():
    with pytest.raises(HypothesisUnmet):
        wco_spectral_radius_theory(P("1/(2-z)"), P("1/(2-z)"))
    t = wco_spectral_radius_theory(P("1/(2-z)"), P("1/(2-z)"), assertions=("uci",))
    assert t.hypotheses["phi UCI"] == "asserted"
    assert t.value == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(HypothesisUnmet):
        wco_spectral_radius_theory(P("1-z"), P("(z+1)/2"))


def test_eigenvalue_list():
    ev = eigenvalue_list_theory(P("exp(z)"), P("z/2"), denjoy_wolff(P("z/2")), 3)
    assert np.allclose(ev, [0, 1, 0.5, 0.25, 0.125])
    ev = eigenvalue_list_theory(P("3"), Polynomial([0, 0, 0.5]), denjoy_wolff(Polynomial([0, 0, 0.5])), 3)
    assert np.allclose(ev, [0, 3, 0, 0, 0])
    w = wco_matrix(P("exp(z)"), P("z/(2-z)"), 16).matrix
    ev = eigenvalue_list_theory(P("exp(z)"), P("z/(2-z)"), denjoy_wolff(P("z/(2-z)")), 15)
    assert np.allclose(np.diag(w), ev[1:], rtol=1e-12)
    with pytest.raises(HypothesisUnmet):
        eigenvalue_list_theory(P("1"), P("(z+1)/2"), denjoy_wolff(P("(z+1)/2")), 2)
