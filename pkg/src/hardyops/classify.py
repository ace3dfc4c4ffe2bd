"""Normaloid, spectraloid and essentially-normaloid verdicts for W_{psi,phi}.

"Yes" needs the compression norm ladder to settle within ``tol_rel`` of the
closed-form spectral radius. "No" needs a certified lower bound on ||W|| (an
exact vector evaluation or a compression norm) above rho*(1 + tol_rel).
Anything else is inconclusive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .errors import HypothesisUnmet, NotFixedPoint
from .spectra import (
    ASSERTED,
    DEFAULT_LADDER,
    VERIFIED,
    LadderEvidence,
    essential_norm_bound,
    ladder_evidence,
    largest_singular_value,
    wco_spectral_radius_theory,
)
from .operators import compose_matrix
from .symbols.dynamics import FIXED_POINT_TOL, denjoy_wolff, radial_limit, sup_norm, uci_sufficient
from .symbols.maps import AnalyticMap, as_map, compose
from .symbols.weights import canonical_weight, kernel_as_map, mobius_fixing

YES, NO, INCONCLUSIVE = "yes", "no", "inconclusive"
MATCHES, DIFFERS, NA = "matches", "differs", "n/a"
PASSES, FAILS = "passes", "fails"


@dataclass(frozen=True)
class Evidence:
    claim: str
    theory: float | None
    matrix: float | None
    ladder: tuple = ()
    tolerance: float | None = None
    note: str = ""


@dataclass
class ClassificationVerdict:
    normaloid: str
    spectraloid: str
    essentially_normaloid: str
    convexoid_equiv_spectraloid: bool
    weight_form: str
    psi2_necessary: str
    rho_theory: float | None = None
    evidence: list = field(default_factory=list)
    issues: list = field(default_factory=list)

    def __post_init__(self):
        if self.normaloid == YES and self.spectraloid == NO:
            raise AssertionError("a normaloid operator is spectraloid")


@dataclass
class ClassifyOptions:
    ladder: tuple = DEFAULT_LADDER
    tol_rel: float = 0.02
    stabilization: float = 0.005
    angles: int = 64
    assertions: tuple = ()
    factor: AnalyticMap | None = None
    seed: int = 0


# --------------------------------------------------------------------------
# single checks
# --------------------------------------------------------------------------


def disk_points(n=200, radius=0.95, seed=0):
    """Quasi-random points filling the disk of the given radius (Halton)."""
    u = qmc.Halton(d=2, scramble=False, seed=seed).random(n + 1)[1:]
    return radius * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])


def weight_form_test(psi, phi, a, points=200, tol=1e-8):
    """Whether psi equals psi(a) K_a / (K_a o phi) on sample points."""
    psi, phi = as_map(psi), as_map(phi)
    a = complex(a)
    if abs(phi.eval(a) - a) > FIXED_POINT_TOL:
        raise NotFixedPoint(f"phi({a}) != {a}")
    target = canonical_weight(phi, a, complex(psi.eval(a)))
    z = disk_points(points)
    want = np.asarray(target.eval(z))
    got = np.asarray(psi.eval(z))
    scale = max(float(np.max(np.abs(want))), 1e-300)
    return MATCHES if float(np.max(np.abs(got - want))) <= tol * scale else DIFFERS


@dataclass(frozen=True)
class H2Norm:
    value: float
    terms: int
    converged: bool


def h2_norm(f, start=256, limit=16384, rel_tail=1e-14):
    """sqrt(sum |c_n|^2) over Taylor coefficients, doubling until the tail is negligible.

    The tail test asks that the last quarter of the coefficients contributes
    less than ``rel_tail`` to the squared norm; the partial sum is always a
    lower bound.
    """
    f = as_map(f)
    n = start
    while True:
        c = f.taylor(n)
        sq = np.abs(c) ** 2
        total = float(np.sum(sq))
        tail = float(np.sum(sq[-(n // 4):]))
        if tail <= rel_tail * max(total, 1e-300):
            return H2Norm(math.sqrt(total), n, True)
        if n >= limit:
            return H2Norm(math.sqrt(total), n, False)
        n *= 2


@dataclass(frozen=True)
class Psi2Result:
    status: str
    norm: float
    value_at_a: float


def psi2_check(psi, a, tol=1e-9):
    """Necessary condition for normaloid with rho(W) = |psi(a)|: ||psi||_2 <= |psi(a)|.

    ||psi||_2 = ||W 1|| is a certified lower bound for ||W||.
    """
    psi = as_map(psi)
    val, _ = radial_limit(psi, complex(a))
    norm = h2_norm(psi).value
    status = PASSES if norm <= abs(val) + tol else FAILS
    return Psi2Result(status, norm, abs(val))


def kernel_image_bound(psi, phi, a):
    """||W K_a|| / ||K_a||, a certified lower bound for ||W|| at an interior point a."""
    kernel = kernel_as_map(a)
    image = as_map(psi) * compose(kernel, as_map(phi))
    return h2_norm(image).value * math.sqrt(1 - abs(a) ** 2)


def _close(x, y, tol):
    return abs(x - y) <= tol * abs(y)


# --------------------------------------------------------------------------
# classifier
# --------------------------------------------------------------------------


def classify(psi, phi, options: ClassifyOptions | None = None, evidence: LadderEvidence | None = None):
    """Verdicts for W_{psi,phi}; failed hypotheses land in ``issues``."""
    opts = options or ClassifyOptions()
    psi, phi = as_map(psi), as_map(phi)
    tol = opts.tol_rel
    dw = denjoy_wolff(phi)
    issues = []
    items = []

    sup = sup_norm(psi).value
    if not math.isfinite(sup):
        raise HypothesisUnmet("psi bounded", "boundary samples are unbounded")

    ev = evidence or ladder_evidence(psi, phi, opts.ladder, opts.angles, opts.seed)
    ladder = tuple(zip(ev.orders, ev.norms))
    settled = ev.last_change() <= opts.stabilization and all(ev.converged)
    if not settled:
        issues.append(f"norm ladder not settled: last relative change {ev.last_change():.2e}")

    theory = None
    try:
        theory = wco_spectral_radius_theory(psi, phi, dw, opts.assertions)
    except HypothesisUnmet as exc:
        issues.append(str(exc))
    rho = theory.value if theory is not None and theory.justified else None
    if theory is not None:
        for name, status in theory.hypotheses.items():
            if status not in (VERIFIED, ASSERTED):
                issues.append(f"{name}: {status}")
    items.append(Evidence("spectral radius", rho, ev.spectral_radii[-1], tuple(zip(ev.orders, ev.spectral_radii)),
                          None, "matrix value is evidence only"))

    psi2 = psi2_check(psi, dw.point)
    lower = [("compression norm", ev.norm)]
    lower.append(("||W 1|| = ||psi||_2", psi2.norm))
    if dw.interior:
        weight = weight_form_test(psi, phi, dw.point)
        if abs(dw.point) > 0:
            lower.append(("||W k_a||", kernel_image_bound(psi, phi, dw.point)))
    else:
        weight = NA
    best_name, best_lower = max(lower, key=lambda t: t[1])
    items.append(Evidence("certified lower bound for ||W||", rho, best_lower, ladder, tol, best_name))

    # normaloid
    contradiction = False
    if dw.interior and rho is not None and _close(rho, abs(psi.eval(dw.point)), 1e-12):
        # here normaloid holds exactly for the canonical weight
        contradiction = weight == DIFFERS
        items.append(Evidence("weight has the canonical form", None, None, (), 1e-8, weight))
    if rho is None:
        normaloid = INCONCLUSIVE
    elif best_lower > rho * (1 + tol):
        normaloid = NO
    elif not contradiction and settled and _close(ev.norm, rho, tol) and ev.monotone():
        normaloid = YES
    else:
        normaloid = INCONCLUSIVE
    items.append(Evidence("||W|| = rho(W)", rho, ev.norm, ladder, tol))

    if not dw.interior and rho is not None:
        items.extend(_boundary_paths(psi, phi, dw, sup, opts, ev))

    # spectraloid
    nr_orders = sorted(ev.numerical_radii)
    nr = ev.numerical_radii[nr_orders[-1]]
    nr_settled = len(nr_orders) < 2 or _close(ev.numerical_radii[nr_orders[-2]], nr, opts.stabilization)
    if rho is None:
        spectraloid = INCONCLUSIVE
    elif nr > rho * (1 + tol):
        spectraloid = NO
    elif normaloid == YES or (nr_settled and _close(nr, rho, tol)):
        spectraloid = YES
    else:
        spectraloid = INCONCLUSIVE
    items.append(Evidence("r(W) = rho(W)", rho, nr, tuple(ev.numerical_radii.items()), tol))

    ess = _essentially_normaloid(psi, phi, dw, theory, items)

    convexoid_flag = False
    if not dw.interior and dw.multiplier < 1 - 1e-9:
        if "uci" in opts.assertions:
            convexoid_flag = True
        else:
            convexoid_flag = uci_sufficient(phi, dw).certified

    return ClassificationVerdict(
        normaloid=normaloid,
        spectraloid=spectraloid,
        essentially_normaloid=ess,
        convexoid_equiv_spectraloid=convexoid_flag,
        weight_form=weight,
        psi2_necessary=psi2.status,
        rho_theory=rho,
        evidence=items,
        issues=issues,
    )


def _essentially_normaloid(psi, phi, dw, theory, items, gap=0.01):
    if theory is None or not dw.interior:
        return INCONCLUSIVE
    if theory.branch == "power_compact":
        if theory.terms.get("cphi_essential_radius") == 0.0 and _first_order_compact(phi):
            items.append(Evidence("W compact", 0.0, 0.0, (), None, "phi(closed disk) inside the open disk"))
            return YES
        return INCONCLUSIVE
    b = theory.terms.get("establishing_point")
    if b is None or theory.hypotheses.get("single contact point") != VERIFIED:
        return INCONCLUSIVE
    rho_e_c = theory.terms["cphi_essential_radius"]
    _, c_lower = essential_norm_bound(1.0, phi, b)
    items.append(Evidence("||C_phi||_e = rho_e(C_phi)", rho_e_c, c_lower, (), gap, "kernel sequence toward b"))
    if abs(theory.terms["psi_b"]) == 0 or not _close(c_lower, rho_e_c, gap):
        return INCONCLUSIVE
    rho_e_w = theory.terms["essential"]
    _, w_lower = essential_norm_bound(psi, phi, b)
    items.append(Evidence("||W||_e = rho_e(W)", rho_e_w, w_lower, (), gap, "kernel sequence toward b"))
    return YES if _close(w_lower, rho_e_w, gap) else INCONCLUSIVE


def _first_order_compact(phi):
    from .symbols.dynamics import contact_set

    hits, exact = contact_set(phi)
    return exact and not hits


def _ladder_agrees(norms, target, tol, stabilization):
    if len(norms) < 2:
        return False
    change = abs(norms[-1] - norms[-2]) / norms[-1]
    return change <= stabilization and _close(norms[-1], target, tol)


def _boundary_paths(psi, phi, dw, sup, opts, ev):
    """Sufficient theory paths at a boundary attracting point, as evidence."""
    out = []
    psi_a = abs(radial_limit(psi, dw.point)[0])
    attains = psi_a >= sup * (1 - 1e-6)
    if dw.multiplier < 1 - 1e-9:
        target = dw.multiplier ** -0.5
        c_norms = [largest_singular_value(compose_matrix(phi, n), seed=opts.seed).value for n in opts.ladder]
        c_ok = _ladder_agrees(c_norms, target, opts.tol_rel, opts.stabilization)
        out.append(Evidence("C_phi normaloid", target, c_norms[-1], tuple(zip(opts.ladder, c_norms)), opts.tol_rel))
        out.append(Evidence("|psi(a)| = ||psi||_inf", sup, psi_a, (), 1e-6, "holds" if attains else "fails"))
        if c_ok and attains:
            out.append(Evidence("W normaloid from C_phi normaloid", psi_a * target, ev.norm, (), opts.tol_rel))
    else:
        out.append(Evidence("C_phi not normaloid (multiplier 1)", 1.0,
                            largest_singular_value(compose_matrix(phi, opts.ladder[-1]), seed=opts.seed).value))
    if ev.hermitian_residual <= 1e-10:
        out.append(Evidence("W self-adjoint", 0.0, ev.hermitian_residual, (), 1e-10))
    if opts.factor is not None:
        out.extend(_factor_path(psi, phi, dw, opts))
    return out


def _factor_path(psi, phi, dw, opts):
    """W_{f g, phi} normaloid from W_{g, phi} normaloid when |f(a)| = ||f||_inf."""
    f = as_map(opts.factor)
    g = psi / f
    fa = abs(radial_limit(f, dw.point)[0])
    f_sup = sup_norm(f).value
    base_opts = ClassifyOptions(opts.ladder, opts.tol_rel, opts.stabilization, opts.angles, opts.assertions, None, opts.seed)
    base = classify(g, phi, base_opts)
    ok = base.normaloid == YES and fa >= f_sup * (1 - 1e-6)
    note = f"base normaloid {base.normaloid}; |f(a)| = {fa:.12g}, ||f||_inf = {f_sup:.12g}"
    theory = fa * base.rho_theory if base.rho_theory is not None else None
    return [Evidence("factor keeps normaloid" if ok else "factor path not applicable", theory, None, (), 1e-6, note)]


# --------------------------------------------------------------------------
# executable theorem checks
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteResult:
    check: str
    instances: int
    passed: bool
    detail: str


def theorem_suite(ladder=DEFAULT_LADDER, seed=0):
    """Executable instances of the structural results; failures are data."""
    from .expr import parse_symbol
    from .spectra import eigenvalue_list_theory
    from .operators import wco_matrix
    from .symbols.weights import conjugated_symbols

    rng = np.random.default_rng(seed)
    results = []

    # ||C_phi|| = 1 exactly when phi(0) = 0
    fixes0 = parse_symbol("z/(2-z)")
    moves0 = parse_symbol("(z+1)/2")
    n0 = [largest_singular_value(compose_matrix(fixes0, n), seed=seed).value for n in ladder]
    n1 = largest_singular_value(compose_matrix(moves0, ladder[-1]), seed=seed).value
    ok = all(abs(v - 1) <= 1e-9 for v in n0) and n1 > 1 + 1e-3
    results.append(SuiteResult("unit norm iff phi(0)=0", 2, ok, f"fixing 0: {n0}; moving 0: {n1:.6f}"))

    # canonical weights give W unitarily similar to psi(a) C_g
    worst = 0.0
    count = 8
    for _ in range(count):
        a = 0.8 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        phi = _random_mobius_fixing(a, rng)
        c = complex(rng.normal(), rng.normal())
        psi = canonical_weight(phi, a, c)
        f, _ = conjugated_symbols(psi, phi, a)
        z = disk_points(100)
        worst = max(worst, float(np.max(np.abs(np.asarray(f.eval(z)) - c))) / abs(c))
    results.append(SuiteResult("canonical weight conjugates to a constant", count, worst <= 1e-8,
                               f"max relative deviation {worst:.3e}"))

    # eigenvalues on the triangular diagonal
    psi, phi = parse_symbol("exp(z)"), parse_symbol("z/2")
    dw = denjoy_wolff(phi)
    diag = np.diag(wco_matrix(psi, phi, 16).matrix)
    law = np.array(eigenvalue_list_theory(psi, phi, dw, 15)[1:])
    err = float(np.max(np.abs(diag - law)))
    results.append(SuiteResult("eigenvalue list matches the diagonal", 1, err == 0.0, f"max deviation {err:.3e}"))

    # closed-form spectral radius on the z/(2-z) family
    phi = parse_symbol("z/(2-z)")
    cases = [("2*exp(z)/(2-z)", math.sqrt(2) * math.e), ("exp(-z)", 1.0), ("3", 3.0)]
    errs = []
    for text, want in cases:
        got = wco_spectral_radius_theory(parse_symbol(text), phi).value
        errs.append(abs(got - want) / want)
    results.append(SuiteResult("spectral radius with a boundary contact point", len(cases), max(errs) <= 1e-12,
                               f"relative errors {errs}"))

    # ||psi||_2 <= |psi(a)| is necessary
    fails = psi2_check(parse_symbol("exp(-z)"), 0).status == FAILS
    passes = psi2_check(parse_symbol("exp(z)"), 1).status == PASSES
    results.append(SuiteResult("psi 2-norm necessary condition", 2, fails and passes,
                               f"exp(-z) at 0 fails: {fails}; exp(z) at 1 passes: {passes}"))

    # boundary cases
    opts = ClassifyOptions(ladder=ladder, seed=seed)
    verdict = classify(parse_symbol("exp(z)"), parse_symbol("(z+1)/2"), opts)
    results.append(SuiteResult("normaloid C_phi and |psi(a)| = ||psi||_inf", 1, verdict.normaloid == YES,
                               f"normaloid {verdict.normaloid}"))
    cphi = parse_symbol("1/(2-z)")
    n256 = largest_singular_value(compose_matrix(cphi, ladder[-1]), seed=seed).value
    results.append(SuiteResult("multiplier 1 rules out normaloid C_phi", 1, n256 >= 1.01,
                               f"compression norm {n256:.6f} against rho = 1"))
    base = parse_symbol("1/(2-z)")
    opts_f = ClassifyOptions(ladder=ladder, seed=seed, assertions=("uci",), factor=parse_symbol("exp(z)"))
    verdict = classify(parse_symbol("exp(z)/(2-z)"), base, opts_f)
    ok = verdict.normaloid == YES and any(e.claim == "factor keeps normaloid" for e in verdict.evidence)
    results.append(SuiteResult("factor with |f(a)| = ||f||_inf keeps normaloid", 1, ok, f"normaloid {verdict.normaloid}"))

    # convexoid flag coherence on truncations
    verdict = classify(parse_symbol("exp(z)"), parse_symbol("(z+1)/2"), opts)
    coherent = verdict.convexoid_equiv_spectraloid and verdict.spectraloid != NO
    results.append(SuiteResult("convexoid flag coherent with spectraloid", 1, coherent,
                               f"flag {verdict.convexoid_equiv_spectraloid}, spectraloid {verdict.spectraloid}"))
    return results


def _random_mobius_fixing(a, rng):
    lam = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    q = 0.9 * (1 - abs(lam)) * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    return mobius_fixing(a, lam, q)


__all__ = [
    "ClassificationVerdict",
    "ClassifyOptions",
    "Evidence",
    "classify",
    "h2_norm",
    "psi2_check",
    "theorem_suite",
    "weight_form_test",
]
