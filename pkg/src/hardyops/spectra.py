"""Norms, spectral radii and numerical ranges: matrix estimates and closed forms.

Matrix quantities are computed on finite sections and are evidence only;
compression norms increase to the operator norm from below, and compressions
resolve essential spectrum poorly. The closed-form calculators implement the
known formulas for composition and weighted composition operators.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.linalg import eigh
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from . import _kernels
from .errors import HypothesisUnmet, NoConvergence, UnsupportedRepresentation
from .operators import as_matrix
from .symbols.dynamics import (
    DenjoyWolffData,
    angle_distance,
    boundary_fixed_points,
    contact_set,
    denjoy_wolff,
    radial_limit,
    sup_norm,
    uci_sufficient,
)
from .symbols.maps import Mobius, as_map, iterate

log = logging.getLogger(__name__)

DEFAULT_LADDER = (32, 64, 128, 256, 512)

# hypothesis statuses
VERIFIED = "verified"
FAILED = "failed"
ASSERTED = "asserted"
UNVERIFIED = "unverified"
RADIAL = "radial"


# --------------------------------------------------------------------------
# matrix quantities
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NormEstimate:
    value: float
    iterations: int
    converged: bool
    seed: int
    restarts: int = 0


def largest_singular_value(a, tol=1e-10, max_iter=100_000, seed=0, max_restarts=3):
    """Largest singular value by power iteration on A^H A.

    The Rayleigh quotient never exceeds sigma_max^2, so the result is a lower
    bound even when iteration stops early.
    """
    m = as_matrix(a)
    n = m.shape[1]
    if not np.any(m):
        return NormEstimate(0.0, 0, True, seed)
    rng = np.random.default_rng(seed)
    best = 0.0
    total = 0
    for restart in range(max_restarts + 1):
        v0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lam, _, it, ok = _kernels.power_iteration_gram(m, v0, tol, max_iter)
        total += it
        best = max(best, lam)
        if ok and lam > 0:
            return NormEstimate(math.sqrt(best), total, True, seed, restart)
    log.warning("power iteration stopped after %d iterations without converging", total)
    return NormEstimate(math.sqrt(best), total, False, seed, max_restarts)


def operator_norm_estimate(a, tol=1e-10, max_iter=100_000, seed=0, strict=False):
    est = largest_singular_value(a, tol=tol, max_iter=max_iter, seed=seed)
    if strict and not est.converged:
        raise NoConvergence("largest singular value did not converge", best=est.value)
    return est.value


def spectral_radius_matrix(a):
    """max |eigenvalue| of the section (LAPACK Hessenberg QR)."""
    m = as_matrix(a)
    if not np.all(np.isfinite(m)):
        raise NoConvergence("non-finite matrix entries")
    return float(np.max(np.abs(np.linalg.eigvals(m))))


def gelfand_sequence(a, k_max=16):
    """[(k, ||A^k||^(1/k))] for k = 1..k_max, with log scaling against overflow."""
    if not 1 <= k_max <= 64:
        raise ValueError("k_max must be in 1..64")
    m = as_matrix(a)
    out = []
    power = np.eye(m.shape[0], dtype=np.complex128)
    log_scale = 0.0
    for k in range(1, k_max + 1):
        power = power @ m
        nrm = float(np.linalg.norm(power, 2))
        if nrm == 0.0:
            out.extend((j, 0.0) for j in range(k, k_max + 1))
            break
        out.append((k, math.exp((math.log(nrm) + log_scale) / k)))
        power /= nrm
        log_scale += math.log(nrm)
    return out


@dataclass(frozen=True, eq=False)
class NumericalRange:
    thetas: np.ndarray
    points: np.ndarray
    radius: float
    skipped: tuple = ()


def _top_eigenvector(h, v0=None):
    """Eigenvector of the largest eigenvalue of a Hermitian matrix.

    Lanczos with a capped iteration count is tried first; clustered top
    eigenvalues send it to the dense LAPACK path.
    """
    n = h.shape[0]
    if n > 64:
        try:
            _, vecs = eigsh(h, k=1, which="LA", tol=1e-13, v0=v0, maxiter=50)
            return vecs[:, 0]
        except ArpackNoConvergence:
            pass
    _, vecs = eigh(h, subset_by_index=[n - 1, n - 1])
    return vecs[:, 0]


def numerical_range(a, angles=64):
    """Boundary of the numerical range by rotated Hermitian parts.

    For each theta the top eigenvector v of Re(e^{i theta} A) gives the
    boundary point v^H A v; the radius is the largest modulus among them.
    """
    if angles < 16:
        raise ValueError("need at least 16 angles")
    m = as_matrix(a)
    thetas = 2 * np.pi * np.arange(angles) / angles
    pts = []
    kept = []
    v0 = None
    skipped = []
    for theta in thetas:
        rot = np.exp(1j * theta) * m
        h = 0.5 * (rot + rot.conj().T)
        try:
            v = _top_eigenvector(h, v0)
        except np.linalg.LinAlgError:
            skipped.append(float(theta))
            continue
        v0 = v
        pts.append(np.vdot(v, m @ v))
        kept.append(theta)
    pts = np.asarray(pts, dtype=np.complex128)
    if not pts.size:
        return NumericalRange(np.asarray(kept), pts, float("nan"), tuple(skipped))
    radius = max(float(np.max(np.abs(pts))), _refine_radius(m, np.asarray(kept), pts, angles))
    return NumericalRange(np.asarray(kept), pts, radius, tuple(skipped))


def _refine_radius(m, thetas, pts, angles, candidates=3):
    """Maximize lambda_max(Re(e^{i theta} A)) near the best sampled angles.

    Every value is attained by some unit vector, so this stays a lower bound
    for the numerical radius while removing the angular grid error.
    """
    support = (np.exp(1j * thetas) * pts).real
    half = np.pi / angles

    def neg_top(theta):
        rot = np.exp(1j * theta) * m
        h = 0.5 * (rot + rot.conj().T)
        v = _top_eigenvector(h)
        return -float(np.vdot(v, h @ v).real)

    best = float(np.max(support))
    for k in np.argsort(support)[::-1][:candidates]:
        t0 = thetas[k]
        res = minimize_scalar(neg_top, bounds=(t0 - 2 * half, t0 + 2 * half), method="bounded",
                              options={"xatol": 1e-10})
        best = max(best, -float(res.fun))
    return best


def numerical_radius(a, angles=64):
    return numerical_range(a, angles).radius


def polygon_convexity_defect(points):
    """Largest turn against the polygon's orientation; <= 0 (up to rounding) means convex.

    Works for either orientation; cross products are scaled by max |p|^2.
    """
    p = np.asarray(points, dtype=np.complex128)
    if p.size < 3:
        return 0.0
    e1 = np.roll(p, -1) - p
    e2 = np.roll(p, -2) - np.roll(p, -1)
    cross = (np.conj(e1) * e2).imag
    scale = max(float(np.max(np.abs(p))), 1e-300) ** 2
    return float(min(np.max(-cross), np.max(cross)) / scale)


# --------------------------------------------------------------------------
# closed forms for C_phi
# --------------------------------------------------------------------------


def cphi_norm_bounds(phi):
    """Lower and upper bounds for ||C_phi|| from |phi(0)|."""
    p = abs(as_map(phi).eval(0.0))
    if p >= 1:
        raise ValueError("phi(0) must lie in the open disk")
    return math.sqrt(1 / (1 - p * p)), math.sqrt((1 + p) / (1 - p))


def cphi_spectral_radius_theory(dw: DenjoyWolffData):
    if dw.location == "interior":
        return 1.0
    return dw.multiplier ** -0.5


@dataclass(frozen=True)
class EssentialRadius:
    value: float
    establishing_point: complex | None
    order: int
    exact: bool
    contact_points: tuple = ()


def cphi_essential_spectral_radius(phi, n_max=8):
    """Essential spectral radius of C_phi for rational phi with interior attracting point.

    Finds the least n whose contact set S_n is empty (returns 0) or made of
    fixed points of phi_n on the circle, and maximizes phi_n'(w)^(-1/2n) over
    it. The establishing point is returned alongside.
    """
    phi = as_map(phi)
    if phi.rational() is None:
        raise UnsupportedRepresentation("contact sets need a rational symbol")
    dw = denjoy_wolff(phi)
    if dw.location != "interior":
        raise HypothesisUnmet("interior Denjoy-Wolff point", f"attracting point {dw.point} is on the circle")
    for n in range(1, n_max + 1):
        fn = iterate(phi, n)
        hits, exact = contact_set(fn)
        if not hits:
            return EssentialRadius(0.0, None, n, exact)
        if not exact and len(hits) > 0.5 * 4096:
            raise HypothesisUnmet("phi not inner", "iterate maps most of the circle to the circle")
        fixed = [(w, m) for (k, w, m) in boundary_fixed_points(fn, 1)]
        tol = 1e-8 if exact else 1e-2
        if all(any(angle_distance(h, w) <= tol for w, _ in fixed) for h in hits):
            used = [(w, m) for w, m in fixed if any(angle_distance(h, w) <= tol for h in hits)]
            vals = [(m ** (-1.0 / (2 * n)), w) for w, m in used]
            value, b = max(vals, key=lambda t: t[0])
            return EssentialRadius(float(value), complex(b), n, exact, tuple(complex(h) for h in hits))
    raise HypothesisUnmet(
        "contact set made of fixed points",
        f"no iterate up to {n_max} has its contact set inside its fixed points",
    )


def essential_norm_bound(psi, phi, b, radii=None):
    """Kernel-sequence estimate of ||W_{psi,phi}||_e along the radius to b.

    Returns (trace, value) where trace lists (r, |psi(rb)| ||C_phi^* k_rb||)
    and value is the entry at the radius closest to 1.
    """
    psi, phi = as_map(psi), as_map(phi)
    if radii is None:
        radii = [1 - 2.0**-k for k in range(4, 21)]
    radii = np.asarray(sorted(radii), dtype=float)
    w = radii * complex(b)
    one_minus_r = 1 - radii
    ratio = (one_minus_r * (1 + radii)) / (1 - np.abs(phi.eval(w)) ** 2)
    vals = np.abs(psi.eval(w)) * np.sqrt(ratio)
    trace = [(float(r), float(v)) for r, v in zip(radii, vals)]
    return trace, float(vals[-1])


def essential_norm_lower(psi, phi, b, radii=None):
    return essential_norm_bound(psi, phi, b, radii)[1]


# --------------------------------------------------------------------------
# closed forms for W_{psi,phi}
# --------------------------------------------------------------------------


@dataclass
class TheoryValue:
    value: float
    branch: str
    hypotheses: dict = field(default_factory=dict)
    terms: dict = field(default_factory=dict)

    justified: bool = True

    @property
    def unmet(self):
        return [k for k, v in self.hypotheses.items() if v in (FAILED, UNVERIFIED)]


def _analytic_near_closed_disk(phi):
    r = phi.rational()
    if r is None:
        return False
    den = r[1]
    if den.size == 1:
        return True
    return bool(np.all(np.abs(P.polyroots(den)) > 1 + 1e-12))


def _qualitative(name, verified, assertions):
    if verified:
        return VERIFIED
    return ASSERTED if name in assertions else UNVERIFIED


def wco_spectral_radius_theory(psi, phi, dw=None, assertions=(), strict=False, n_max=8):
    """Closed-form spectral radius of W_{psi,phi}.

    Interior attracting point a: max(|psi(a)|, |psi(b)| rho_e(C_phi)) with b
    the establishing boundary point, or |psi(a)| when C_phi is power-compact.
    Boundary attracting point: |psi(a)| phi'(a)^(-1/2), requiring uniformly
    convergent iteration (certified or asserted) and psi(a) != 0.

    Hypotheses that fail are recorded in ``hypotheses`` and ``justified`` says
    whether the value still stands; with ``strict`` the first failed or
    unverified one raises HypothesisUnmet. Hypotheses without
    which no value can be formed always raise.
    """
    psi, phi = as_map(psi), as_map(phi)
    assertions = set(assertions)
    dw = dw or denjoy_wolff(phi)
    hyp = {}
    terms = {}
    if dw.location == "interior":
        psi_a = abs(psi.eval(dw.point))
        terms["psi_a"] = psi_a
        ess = cphi_essential_spectral_radius(phi, n_max=n_max)
        terms["cphi_essential_radius"] = ess.value
        if ess.establishing_point is None:
            out = TheoryValue(psi_a, "power_compact", hyp, terms)
        else:
            b = ess.establishing_point
            psi_b, how = radial_limit(psi, b)
            sup = sup_norm(psi).value
            terms["establishing_point"] = b
            terms["psi_b"] = abs(psi_b)
            terms["psi_sup"] = sup
            hyp["psi continuous at b"] = VERIFIED if how == "direct" else RADIAL
            hyp["|psi(b)| = sup|psi|"] = VERIFIED if abs(psi_b) >= sup * (1 - 1e-6) else FAILED
            is_mobius = isinstance(phi, Mobius)
            hyp["phi univalent"] = _qualitative("univalent", is_mobius, assertions)
            hyp["phi not inner"] = _qualitative("non_inner", is_mobius, assertions)
            hyp["phi analytic near closed disk"] = (
                VERIFIED if _analytic_near_closed_disk(phi) else UNVERIFIED
            )
            # With a single exactly known contact point b, psi - psi(b) vanishes
            # where phi reaches the circle, so W - psi(b) C_phi is compact and
            # the sup-norm condition is not needed for the value.
            single = ess.exact and ess.order == 1 and len(ess.contact_points) == 1
            hyp["single contact point"] = VERIFIED if single else UNVERIFIED
            essential = abs(psi_b) * ess.value
            terms["essential"] = essential
            branch = "essential" if essential > psi_a else "point"
            core = [k for k in hyp if k not in ("|psi(b)| = sup|psi|", "single contact point")]
            ok = all(hyp[k] != FAILED and hyp[k] != UNVERIFIED for k in core)
            ok = ok and (hyp["|psi(b)| = sup|psi|"] == VERIFIED or single)
            out = TheoryValue(max(psi_a, essential), branch, hyp, terms, ok)
    else:
        psi_a, how = radial_limit(psi, dw.point)
        terms["psi_a"] = abs(psi_a)
        terms["multiplier"] = dw.multiplier
        if "uci" in assertions:
            hyp["phi UCI"] = ASSERTED
        else:
            uci = uci_sufficient(phi, dw)
            if not uci.certified:
                raise HypothesisUnmet("phi UCI", uci.reason)
            hyp["phi UCI"] = VERIFIED
            terms["uci_order"] = uci.order
        hyp["psi continuous at a"] = VERIFIED if how == "direct" else RADIAL
        if abs(psi_a) == 0:
            raise HypothesisUnmet("psi(a) != 0")
        out = TheoryValue(abs(psi_a) * dw.multiplier ** -0.5, "boundary", hyp, terms)
    if strict and out.unmet:
        name = out.unmet[0]
        raise HypothesisUnmet(name, f"status {out.hypotheses[name]}")
    return out


def eigenvalue_list_theory(psi, phi, dw, m):
    """Candidate eigenvalues 0, psi(a), psi(a) phi'(a), ..., psi(a) phi'(a)^m."""
    if dw.location != "interior":
        raise HypothesisUnmet("interior Denjoy-Wolff point")
    psi, phi = as_map(psi), as_map(phi)
    pa = complex(psi.eval(dw.point))
    lam = complex(phi.derivative(dw.point))
    return [0j] + [pa * lam**k for k in range(m + 1)]


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------


@dataclass
class SpectralReport:
    norm_estimate: float
    norm_bounds: list | None
    spectral_radius_matrix: float
    spectral_radius_theory: float | None
    gelfand_trace: list
    essential_spectral_radius_theory: float | None
    essential_norm_lower: float | None
    numerical_radius: float
    numerical_range_boundary: list
    eigenvalues_theory: list | None
    truncation_orders: list
    norm_ladder: list
    radius_ladder: list
    provenance: dict


@dataclass(eq=False)
class LadderEvidence:
    """Matrix evidence gathered over a ladder of truncation orders."""

    orders: list
    norms: list
    converged: list
    spectral_radii: list
    numerical_radii: dict
    numerical_range: NumericalRange
    gelfand: list
    hermitian_residual: float
    seed: int

    @property
    def norm(self):
        return self.norms[-1]

    def last_change(self):
        if len(self.norms) < 2 or self.norms[-1] == 0:
            return 0.0
        return abs(self.norms[-1] - self.norms[-2]) / self.norms[-1]

    def monotone(self, slack=1e-9):
        return all(b >= a - slack * max(1.0, a) for a, b in zip(self.norms, self.norms[1:]))


def ladder_evidence(psi, phi, orders=DEFAULT_LADDER, angles=64, seed=0, k_max=16, gelfand_order=128):
    """Norms and spectral radii of W_{psi,phi} sections on each order of the ladder.

    The numerical radius is computed on the last two orders, the Gelfand
    trace on an order no larger than ``gelfand_order``.
    """
    from .operators import wco_matrix

    orders = list(orders)
    if any(b <= a for a, b in zip(orders, orders[1:])):
        raise ValueError("truncation ladder must be strictly increasing")
    norms, conv, radii, nr = [], [], [], {}
    nrange = None
    mats = {}
    for n in orders:
        w = wco_matrix(psi, phi, n).matrix
        mats[n] = w
        est = largest_singular_value(w, seed=seed)
        norms.append(est.value)
        conv.append(est.converged)
        radii.append(spectral_radius_matrix(w))
    for n in orders[-2:]:
        rng = numerical_range(mats[n], angles)
        nr[n] = rng.radius
        nrange = rng
    g_order = max([n for n in orders if n <= gelfand_order] or orders[:1])
    gel = gelfand_sequence(mats[g_order], k_max)
    herm = hermitian_residual_of(mats[orders[-1]])
    return LadderEvidence(orders, norms, conv, radii, nr, nrange, gel, herm, seed)


def hermitian_residual_of(m):
    return float(np.linalg.norm(m - m.conj().T, 2))
