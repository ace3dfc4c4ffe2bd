import math

import numpy as np
import pytest

from hardyops.classify import (
    DIFFERS,
    FAILS,
    INCONCLUSIVE,
    MATCHES,
    NO,
    PASSES,
    YES,
    ClassificationVerdict,
    ClassifyOptions,
    classify,
    disk_points,
    h2_norm,
    kernel_image_bound,
    psi2_check,
    theorem_suite,
    weight_form_test,
)
from hardyops.errors import NotFixedPoint
from hardyops.expr import parse_symbol as P
from hardyops.symbols import Polynomial, canonical_weight, constant, mobius_fixing

LADDER = (32, 64, 128, 256, 512)
_cache = {}


def verdict(psi, phi, assertions=(), factor=None):
    key = (psi, phi, assertions, factor)
    if key not in _cache:
        opts = ClassifyOptions(ladder=LADDER, assertions=assertions, factor=P(factor) if factor else None)
        _cache[key] = classify(P(psi), P(phi), opts)
    return _cache[key]


def test_disk_points_inside():
    z = disk_points(200)
    assert z.shape == (200,) and np.all(np.abs(z) <= 0.95)
    assert len(set(np.round(z, 12))) == 200


def test_weight_form_examples():
    phi = P("z/(2-z)")
    assert weight_form_test(P("exp(z)"), P("z/2"), 0) == DIFFERS
    assert weight_form_test(constant(2.5), phi, 0) == MATCHES
    with pytest.raises(NotFixedPoint):
        weight_form_test(P("1"), P("(z+1)/2"), 0)


def test_weight_form_random_mobius():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        lam = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        phi = mobius_fixing(a, lam, rng.uniform(0, 1 - abs(lam)) * np.exp(2j * np.pi * rng.uniform()))
        c = complex(rng.normal(), rng.normal())
        assert weight_form_test(canonical_weight(phi, a, c), phi, a) == MATCHES


def test_h2_norm():
    n = h2_norm(P("exp(-z)"))
    assert n.converged
    oracle = math.sqrt(sum(1 / math.factorial(k) ** 2 for k in range(21)))
    assert n.value == pytest.approx(oracle, rel=1e-14)
    assert h2_norm(P("1/(2-z)")).value == pytest.approx(math.sqrt(1 / 3), rel=1e-12)


def test_psi2_examples():
    r = psi2_check(constant(3), 0)
    assert r.status == PASSES and r.norm == r.value_at_a == 3
    r = psi2_check(P("exp(-z)"), 0)
    assert r.status == FAILS and r.norm == pytest.approx(1.5098295, abs=1e-6)
    r = psi2_check(P("exp(z)"), 1)
    assert r.status == PASSES and r.value_at_a == pytest.approx(math.e)


def test_kernel_image_bound_is_lower_bound():
    # K_{1/2} o (z+1)/2 = (4/3) / (1 - z/3), whose norm is sqrt(2)
    assert kernel_image_bound(P("1"), P("(z+1)/2"), 0.5) == pytest.approx(math.sqrt(1.5), rel=1e-12)
    assert kernel_image_bound(P("1"), P("(z+1)/2"), 0) == pytest.approx(1.0)


def test_verdict_coherence_enforced():
    with pytest.raises(AssertionError):
        ClassificationVerdict(YES, NO, YES, False, DIFFERS, PASSES)


def test_boundary_example_normaloid():
    v = verdict("exp(z)", "(z+1)/2")
    assert v.normaloid == YES and v.spectraloid == YES
    assert v.convexoid_equiv_spectraloid
    assert v.rho_theory == pytest.approx(math.e * math.sqrt(2), rel=1e-9)


def test_not_normaloid_but_essentially_normaloid():
    v = verdict("exp(-z)", "z/(2-z)")
    assert v.normaloid == NO
    assert v.essentially_normaloid == YES
    assert v.psi2_necessary == FAILS
    assert v.weight_form == DIFFERS


def test_constant_weight_normaloid():
    v = verdict("3", "z/(2-z)")
    assert v.normaloid == YES and v.weight_form == MATCHES
    assert v.rho_theory == pytest.approx(3.0)


def test_essential_branch_normaloid():
    v = verdict("2*exp(z)/(2-z)", "z/(2-z)")
    assert v.normaloid == YES
    assert v.rho_theory == pytest.approx(math.sqrt(2) * math.e, rel=1e-9)


def test_power_compact_iff():
    # interior attracting point and compact C_phi: normaloid exactly for canonical weights
    v = verdict("exp(z)", "z/2")
    assert v.normaloid == NO and v.weight_form == DIFFERS
    v = verdict("2", "(z+z*z)/4")
    assert v.normaloid == YES and v.weight_form == MATCHES


def test_self_adjoint_example():
    v = verdict("1/(2-z)", "1/(2-z)", ("uci",))
    assert v.normaloid == YES and v.spectraloid == YES


def test_factor_path():
    v = verdict("exp(z)/(2-z)", "1/(2-z)", ("uci",), "exp(z)")
    assert v.normaloid == YES
    assert any(e.claim == "factor keeps normaloid" for e in v.evidence)


def test_missing_uci_is_recorded_not_raised():
    v = classify(P("1/(2-z)"), P("1/(2-z)"), ClassifyOptions(ladder=(32, 64)))
    assert v.issues
    assert v.normaloid in (INCONCLUSIVE, YES, NO)


def test_no_yes_with_differs_on_power_compact():
    rng = np.random.default_rng(3)
    for _ in range(5):
        c = rng.normal(size=3) * 0.2
        psi = Polynomial([1.0, *c])
        v = classify(psi, P("z/2"), ClassifyOptions(ladder=(32, 64, 128)))
        assert not (v.normaloid == YES and v.weight_form == DIFFERS)


def test_theorem_suite_passes():
    results = theorem_suite()
    assert results
    for r in results:
        assert r.passed, f"{r.check}: {r.detail}"
