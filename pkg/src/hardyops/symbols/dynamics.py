"""Self-map tests and iteration dynamics on the unit disk."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import minimize_scalar

from ..errors import (
    EllipticAutomorphism,
    HypothesisUnmet,
    NoConvergence,
    NotSelfMap,
    PoleOnDomain,
    UnsupportedRepresentation,
)
from .maps import Mobius, Polynomial, as_map, iterate

VERIFIED = "verified"
REFUTED = "refuted"
UNKNOWN = "unknown"

# |w| within this of 1 counts as unimodular
UNIMODULAR_TOL = 1e-9
FIXED_POINT_TOL = 1e-10


@dataclass(frozen=True)
class DenjoyWolffData:
    point: complex
    multiplier: float
    location: str  # "interior" | "boundary"
    method: str  # "closed_form" | "orbit_iteration"
    residual: float

    @property
    def interior(self):
        return self.location == "interior"


@dataclass(frozen=True)
class UciResult:
    certified: bool
    order: int | None
    reason: str = ""


@dataclass(frozen=True)
class SupNorm:
    """Sampled estimate of sup |f| on the circle and where it is (nearly) attained."""

    value: float
    argmax: complex


def circle(n, r=1.0, phase=0.0):
    return r * np.exp(1j * (2 * np.pi * np.arange(n) / n + phase))


# --------------------------------------------------------------------------
# boundary values
# --------------------------------------------------------------------------


def _safe_eval(f, z):
    try:
        v = f.eval(z)
    except (PoleOnDomain, ZeroDivisionError, FloatingPointError):
        return None
    if np.all(np.isfinite(v)):
        return v
    return None


def radial_limit(f, a, kmin=10, kmax=30, tol=1e-8):
    """lim f(r a) as r -> 1 via r = 1 - 2**-k; returns (value, method).

    Uses the direct value when f is finite at a.
    """
    f = as_map(f)
    direct = _safe_eval(f, complex(a))
    if direct is not None:
        return complex(direct), "direct"
    prev = None
    for k in range(kmin, kmax + 1):
        v = _safe_eval(f, (1 - 2.0**-k) * a)
        if v is None:
            raise PoleOnDomain(f"no radial limit at {a}")
        if prev is not None and abs(v - prev) < tol * max(1.0, abs(v)):
            return complex(v), "radial"
        prev = v
    raise NoConvergence(f"radial limit at {a} did not settle", best=prev)


def sup_norm(f, n=4096, levels=(10, 20, 30)):
    """Estimate sup |f| over the disk from circle samples.

    Samples |f| on r = 1 - 2**-k for each k in ``levels`` and on the circle
    itself where f is finite there; then refines the best few angles with a
    bounded scalar search. The result is an estimate, never a bound.
    """
    f = as_map(f)
    radii = [1 - 2.0**-k for k in levels]
    best = (-1.0, 0.0, 1.0)
    pts = circle(n)
    on_circle = _safe_eval(f, pts) is not None
    if on_circle:
        radii.append(1.0)
    for r in radii:
        vals = _safe_eval(f, r * pts)
        if vals is None:
            continue
        mags = np.abs(vals)
        top = np.argsort(mags)[-3:]
        for idx in top:
            t0 = 2 * np.pi * idx / n
            h = 2 * np.pi / n

            def neg(t, r=r):
                v = _safe_eval(f, r * cmath.exp(1j * t))
                return 0.0 if v is None else -abs(v)

            res = minimize_scalar(neg, bounds=(t0 - h, t0 + h), method="bounded",
                                  options={"xatol": 1e-12})
            cand = max((-res.fun, res.x), (mags[idx], t0))
            if cand[0] > best[0]:
                best = (cand[0], cand[1], r)
    value, t, r = best
    return SupNorm(float(value), complex(cmath.exp(1j * t)))


# --------------------------------------------------------------------------
# self-map test
# --------------------------------------------------------------------------


def mobius_disk_image(m):
    """(center, radius) of m(closed disk), or None when the pole is in the closed disk."""
    pole = m.pole
    if pole is not None and abs(pole) <= 1.0:
        return None
    return m.image_circle()


def self_map_check(f, grid_size=256):
    """Tri-state test that f maps the disk into itself."""
    if grid_size < 64:
        raise ValueError("grid_size must be at least 64")
    f = as_map(f)
    if isinstance(f, Mobius):
        img = mobius_disk_image(f)
        if img is None:
            return REFUTED
        center, radius = img
        return VERIFIED if abs(center) + radius <= 1 + 1e-12 else REFUTED
    c = f.constant_value()
    if c is not None:
        return VERIFIED if abs(c) < 1 else REFUTED
    for k in (1, 2, 4, 8, 16, 30, None):
        r = 1.0 if k is None else 1 - 2.0**-k
        try:
            vals = f.eval(circle(grid_size, r, phase=0.5 / grid_size))
        except PoleOnDomain:
            return REFUTED
        if np.any(np.abs(vals) > 1 + 1e-9) or not np.all(np.isfinite(vals)):
            return REFUTED
    if isinstance(f, Polynomial) and np.sum(np.abs(f.coeffs)) <= 1 + 1e-12:
        return VERIFIED
    return UNKNOWN


def require_self_map(f):
    status = self_map_check(f)
    if status == REFUTED:
        raise NotSelfMap(f"{f!r} does not map the disk into itself")
    return status


# --------------------------------------------------------------------------
# Denjoy-Wolff point
# --------------------------------------------------------------------------


def _quadratic_roots(a2, a1, a0):
    """Roots of a2 z^2 + a1 z + a0 with a cancellation-free formula."""
    disc = a1 * a1 - 4 * a2 * a0
    scale = max(abs(a1) ** 2, abs(4 * a2 * a0), 1e-300)
    if abs(disc) <= 1e-14 * scale:
        r = -a1 / (2 * a2)
        return [r, r]
    sq = cmath.sqrt(disc)
    if (a1.conjugate() * sq).real < 0:
        sq = -sq
    q = -(a1 + sq) / 2
    roots = [q / a2]
    roots.append(a0 / q if q != 0 else -a1 / a2 - roots[0])
    return roots


def mobius_fixed_points(m):
    """Finite fixed points of a Moebius map."""
    a, b, c, d = m.a, m.b, m.c, m.d
    if c == 0:
        alpha, beta = a / d, b / d
        if alpha == 1:
            return []
        return [beta / (1 - alpha)]
    return _quadratic_roots(c, d - a, -b)


def _dw_mobius(m):
    if m.is_identity():
        raise EllipticAutomorphism("the identity has no attracting fixed point")
    pts = mobius_fixed_points(m)
    interior = [p for p in pts if abs(p) < 1 - 1e-12]
    if interior:
        p = interior[0]
        mult = abs(m.derivative(p))
        if mult >= 1 - 1e-12:
            raise EllipticAutomorphism(f"elliptic automorphism fixing {p}")
        return DenjoyWolffData(complex(p), float(mult), "interior", "closed_form",
                               float(abs(m.eval(p) - p)))
    best = None
    for p in pts:
        if abs(abs(p) - 1) > 1e-8:
            continue
        w = p / abs(p)
        mult = m.derivative(w)
        mult_r = float(mult.real)
        if mult_r <= 1 + 1e-9 and (best is None or mult_r < best[1]):
            best = (w, mult_r)
    if best is None:
        raise NoConvergence("no attracting fixed point in the closed disk")
    w, mult = best
    return DenjoyWolffData(complex(w), min(mult, 1.0) if abs(mult - 1) < 1e-12 else mult,
                           "boundary", "closed_form", float(abs(m.eval(w) - w)))


def julia_caratheodory(f, a, kmin=10, kmax=30, fit=8):
    """Angular derivative at a boundary point from radial quotients.

    Fits q(r) = (1 - |f(r a)|) / (1 - r) linearly in (1 - r) over the last
    ``fit`` samples r = 1 - 2**-k and returns the intercept.
    """
    ks = np.arange(kmin, kmax + 1)
    eps = 2.0 ** -ks.astype(float)
    vals = np.abs(f.eval((1 - eps) * a))
    q = (1 - vals) / eps
    x, y = eps[-fit:], q[-fit:]
    slope, intercept = np.polyfit(x, y, 1)
    return float(intercept)


def _newton_fixed_point(f, w, steps=200):
    for _ in range(steps):
        g = f.eval(w) - w
        dg = f.derivative(w) - 1
        if abs(g) < 1e-15 or abs(dg) < 1e-300:
            break
        step = g / dg
        w = w - step
        if abs(step) < 1e-16:
            break
    return w


def _dw_orbit(f, max_iter):
    z = 0j
    for _ in range(max_iter):
        z1 = complex(f.eval(z))
        if abs(z1 - z) < 1e-12:
            mult = abs(f.derivative(z1))
            return DenjoyWolffData(z1, float(mult), "interior", "orbit_iteration",
                                   float(abs(f.eval(z1) - z1)))
        z = z1
        if abs(z) > 1 - 1e-4:
            break
    else:
        raise NoConvergence("orbit did not settle", best=z)
    w = _newton_fixed_point(f, z / abs(z))
    if abs(w) < 1 - 1e-9 and abs(f.derivative(w)) < 1:
        return DenjoyWolffData(complex(w), float(abs(f.derivative(w))), "interior",
                               "orbit_iteration", float(abs(f.eval(w) - w)))
    if abs(abs(w) - 1) > 1e-6:
        raise NoConvergence("orbit approached the boundary away from a fixed point", best=w)
    w = w / abs(w)
    mult = julia_caratheodory(f, w)
    resid = _safe_eval(f, w)
    resid = float(abs(resid - w)) if resid is not None else float("nan")
    return DenjoyWolffData(complex(w), mult, "boundary", "orbit_iteration", resid)


def denjoy_wolff(f, method="auto", max_iter=10**6):
    """Denjoy-Wolff point of a self-map that is not an elliptic automorphism.

    Moebius maps are solved in closed form unless ``method="orbit_iteration"``.
    """
    f = as_map(f)
    require_self_map(f)
    if f.constant_value() is not None:
        c = f.constant_value()
        return DenjoyWolffData(complex(c), 0.0, "interior", "closed_form", 0.0)
    if isinstance(f, Mobius) and method in ("auto", "closed_form"):
        return _dw_mobius(f)
    if method == "closed_form":
        raise UnsupportedRepresentation("closed form needs a Moebius map")
    return _dw_orbit(f, max_iter)


# --------------------------------------------------------------------------
# boundary fixed points and contact sets
# --------------------------------------------------------------------------


def _root_findable(f):
    r = f.rational()
    if r is None:
        raise UnsupportedRepresentation(
            "boundary fixed points need a rational map (Moebius or polynomial)"
        )
    return r


def boundary_fixed_points(f, n_max=1):
    """Unimodular fixed points of the iterates f_1 .. f_{n_max}.

    Returns (n, w, multiplier) triples where multiplier is f_n'(w), real and
    positive for a self-map.
    """
    f = as_map(f)
    _root_findable(f)
    require_self_map(f)
    out = []
    for n in range(1, n_max + 1):
        fn = iterate(f, n)
        if isinstance(fn, Mobius):
            roots = mobius_fixed_points(fn)
        else:
            num, den = fn.rational()
            roots = P.polyroots(P.polysub(num, P.polymulx(den)))
        seen = []
        for w in roots:
            if abs(abs(w) - 1) > 1e-7:
                continue
            w = complex(w / abs(w))
            if any(abs(w - s) < 1e-7 for s in seen):
                continue
            if abs(fn.eval(w) - w) > 1e-8:
                continue
            seen.append(w)
            out.append((n, w, float(fn.derivative(w).real)))
    return out


def contact_set(fn, samples=4096):
    """Points of the unit circle that fn sends to the unit circle.

    Exact for Moebius maps; sampled (and refined to fixed points where
    possible) otherwise. Returns (points, exact_flag).
    """
    if isinstance(fn, Mobius):
        img = mobius_disk_image(fn)
        if img is None:
            raise NotSelfMap("pole in the closed disk")
        center, radius = img
        if abs(center) + radius < 1 - 1e-12:
            return [], True
        if abs(center) < 1e-15:
            raise UnsupportedRepresentation("automorphism: the whole circle is a contact set")
        t = center / abs(center)
        w = (fn.d * t - fn.b) / (-fn.c * t + fn.a)
        return [complex(w / abs(w))], True
    if isinstance(fn, Polynomial) and np.sum(np.abs(fn.coeffs)) < 1 - 1e-12:
        return [], True
    pts = circle(samples)
    mags = np.abs(fn.eval(pts))
    hits = pts[mags > 1 - 1e-6]
    return [complex(h) for h in hits], False


def uci_sufficient(f, dw, n_max=8, samples=4096):
    """Certify uniform convergence of iterates via f_N(closed disk) in D u {a}.

    Only applies to boundary Denjoy-Wolff points with multiplier < 1; an
    inconclusive result does not refute the property.
    """
    f = as_map(f)
    if dw.location != "boundary":
        raise HypothesisUnmet("boundary Denjoy-Wolff point",
                              "uci test needs the attracting point on the circle")
    a = dw.point
    if dw.multiplier >= 1 - 1e-12:
        return UciResult(False, None, "multiplier is 1; the sufficient test does not apply")
    pts = circle(samples)
    near = np.abs(np.angle(pts / a)) <= 1e-3
    for n in range(1, n_max + 1):
        fn = iterate(f, n)
        if isinstance(fn, Mobius):
            img = mobius_disk_image(fn)
            if img is None:
                continue
            center, radius = img
            reach = abs(center) + radius
            if reach < 1 - 1e-12:
                return UciResult(True, n, "image disk inside the open disk")
            if abs(reach - 1) <= 1e-12 and abs(center) > 0 and abs(center / abs(center) - a) <= 1e-8:
                return UciResult(True, n, "image disk touches the circle only at the attracting point")
            continue
        vals = _safe_eval(fn, pts)
        if vals is None:
            continue
        if np.all(np.abs(vals[~near]) < 1 - 1e-9):
            return UciResult(True, n, "sampled image stays inside except near the attracting point")
    return UciResult(False, None, f"no iterate up to {n_max} certified")


def is_unimodular(w, tol=UNIMODULAR_TOL):
    return abs(abs(w) - 1.0) <= tol


def angle_distance(w1, w2):
    return abs(math.remainder(cmath.phase(w1) - cmath.phase(w2), 2 * math.pi))
