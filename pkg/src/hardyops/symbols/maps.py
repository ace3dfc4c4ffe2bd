"""Representations of analytic functions on the unit disk.

Rational maps (constants, polynomials, Moebius maps, general quotients of
polynomials) are kept exact: arithmetic and composition among them produce
new rational maps. Anything involving ``exp`` or a user-supplied
transcendental becomes an expression node (sum, product, quotient,
composition) evaluated lazily.

Polynomial coefficient arrays are ascending (index k holds the z**k
coefficient), matching ``numpy.polynomial.polynomial``.
"""

from __future__ import annotations

import cmath

import numpy as np
from numpy.polynomial import polynomial as P

from .. import _kernels
from ..errors import DivisionByZeroStructure, PoleOnDomain, UnsupportedRepresentation

# relative size below which trailing polynomial coefficients are dropped
_TRIM = 1e-14


def _trim(c):
    c = np.atleast_1d(np.asarray(c, dtype=np.complex128))
    if c.size == 0:
        return np.zeros(1, dtype=np.complex128)
    scale = np.max(np.abs(c))
    if scale == 0:
        return np.zeros(1, dtype=np.complex128)
    k = c.size
    while k > 1 and abs(c[k - 1]) <= _TRIM * scale:
        k -= 1
    return c[:k].copy()


def identity_series(n):
    s = np.zeros(n, dtype=np.complex128)
    if n > 1:
        s[1] = 1.0
    return s


def _horner_series(coeffs, s, n):
    """Truncated series of p(s) for a polynomial p with ascending coeffs."""
    out = np.zeros(n, dtype=np.complex128)
    out[0] = coeffs[-1]
    for c in coeffs[-2::-1]:
        out = _kernels.series_mul(out, s, n)
        out[0] += c
    return out


def _is_scalar(z):
    return np.ndim(z) == 0


class AnalyticMap:
    """Base class; subclasses are immutable after construction."""

    kind = "abstract"
    selfmap_hint = "unknown"

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        raise NotImplementedError

    def derivative(self, z):
        raise NotImplementedError

    def series(self, s, n):
        """First ``n`` Taylor coefficients of ``self o g`` where ``s`` holds g's."""
        raise NotImplementedError

    def taylor(self, n):
        return self.series(identity_series(n), n)

    def rational(self):
        """(numerator, denominator) coefficient arrays, or None if not rational."""
        return None

    @property
    def is_rational(self):
        return self.rational() is not None

    def constant_value(self):
        """The constant value if this map is a constant, else None."""
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return add(self, negate(as_map(other)))

    def __rsub__(self, other):
        return add(other, negate(self))

    def __mul__(self, other):
        return multiply(self, other)

    def __rmul__(self, other):
        return multiply(other, self)

    def __truediv__(self, other):
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(other, self)

    def __neg__(self):
        return negate(self)


# --------------------------------------------------------------------------
# rational family
# --------------------------------------------------------------------------


class Rational(AnalyticMap):
    """num/den with ascending coefficient arrays; no common-factor reduction."""

    kind = "rational"

    def __init__(self, num, den):
        self.num = _trim(num)
        self.den = _trim(den)
        if not np.any(self.den):
            raise DivisionByZeroStructure("denominator is identically zero")

    def rational(self):
        return self.num, self.den

    def eval(self, z):
        d = P.polyval(z, self.den)
        if np.any(d == 0):
            raise PoleOnDomain(f"denominator vanishes at {z}")
        out = P.polyval(z, self.num) / d
        return complex(out) if _is_scalar(z) else out

    def derivative(self, z):
        d = P.polyval(z, self.den)
        if np.any(d == 0):
            raise PoleOnDomain(f"denominator vanishes at {z}")
        n = P.polyval(z, self.num)
        dn = P.polyval(z, P.polyder(self.num))
        dd = P.polyval(z, P.polyder(self.den))
        return (dn * d - n * dd) / (d * d)

    def series(self, s, n):
        num = _horner_series(self.num, s, n)
        den = _horner_series(self.den, s, n)
        if abs(den[0]) == 0:
            raise PoleOnDomain("pole at the expansion point")
        return _kernels.series_div(num, den, n)

    def taylor(self, n):
        if self.den[0] == 0:
            raise PoleOnDomain("pole at 0")
        return _kernels.series_div(self.num, self.den, n)

    def __repr__(self):
        return f"Rational(num={self.num.tolist()}, den={self.den.tolist()})"


class Polynomial(Rational):
    kind = "polynomial"

    def __init__(self, coeffs):
        super().__init__(coeffs, [1.0])

    @property
    def coeffs(self):
        return self.num

    @property
    def degree(self):
        return self.num.size - 1

    def eval(self, z):
        out = P.polyval(z, self.num)
        return complex(out) if _is_scalar(z) else out

    def derivative(self, z):
        out = P.polyval(z, P.polyder(self.num))
        return complex(out) if _is_scalar(z) else out

    def series(self, s, n):
        return _horner_series(self.num, s, n)

    def taylor(self, n):
        out = np.zeros(n, dtype=np.complex128)
        m = min(n, self.num.size)
        out[:m] = self.num[:m]
        return out

    def constant_value(self):
        if self.num.size == 1:
            return complex(self.num[0])
        return None

    def __repr__(self):
        return f"Polynomial({self.num.tolist()})"


class Mobius(Rational):
    """(a z + b) / (c z + d) with a d - b c != 0."""

    kind = "mobius"

    def __init__(self, a, b, c, d):
        a, b, c, d = (complex(x) for x in (a, b, c, d))
        if a * d - b * c == 0:
            raise ValueError("degenerate Moebius coefficients: ad - bc = 0")
        self.a, self.b, self.c, self.d = a, b, c, d
        super().__init__([b, a], [d, c])

    @classmethod
    def from_matrix(cls, m):
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def pole(self):
        """Location of the pole, or None for affine maps."""
        if self.c == 0:
            return None
        return -self.d / self.c

    def is_identity(self):
        return self.b == 0 and self.c == 0 and self.a == self.d

    def eval(self, z):
        den = self.c * np.asarray(z) + self.d
        if np.any(den == 0):
            raise PoleOnDomain(f"Moebius pole at {self.pole}")
        out = (self.a * np.asarray(z) + self.b) / den
        return complex(out) if _is_scalar(z) else out

    def derivative(self, z):
        den = self.c * np.asarray(z) + self.d
        if np.any(den == 0):
            raise PoleOnDomain(f"Moebius pole at {self.pole}")
        out = self.det / (den * den)
        return complex(out) if _is_scalar(z) else out

    def taylor(self, n):
        if self.d == 0:
            raise PoleOnDomain("Moebius pole at 0")
        out = np.zeros(n, dtype=np.complex128)
        out[0] = self.b / self.d
        if n > 1:
            ratio = -self.c / self.d
            out[1:] = self.det / self.d**2 * ratio ** np.arange(n - 1)
        return out

    def image_circle(self):
        """Center and radius of the image of the unit circle.

        Only meaningful when the pole lies off the closed disk.
        """
        a, b, c, d = self.a, self.b, self.c, self.d
        gap = abs(d) ** 2 - abs(c) ** 2
        center = (b * d.conjugate() - a * c.conjugate()) / gap
        radius = abs(self.det) / abs(gap)
        return center, radius

    def __repr__(self):
        return f"Mobius({self.a}, {self.b}, {self.c}, {self.d})"


def make_rational(num, den):
    """Normalize num/den into the most specific rational representation."""
    num = _trim(num)
    den = _trim(den)
    if not np.any(den):
        raise DivisionByZeroStructure("denominator is identically zero")
    if den.size == 1:
        return _linear_or_poly(num / den[0])
    if num.size <= 2 and den.size == 2:
        b = num[0]
        a = num[1] if num.size == 2 else 0.0
        d, c = den
        if a * d - b * c != 0:
            return Mobius(a, b, c, d)
        # degenerate quotient is a constant
        return Polynomial([a / c if c != 0 else b / d])
    return Rational(num, den)


def _linear_or_poly(c):
    c = _trim(c)
    if c.size == 2 and c[1] != 0:
        return Mobius(c[1], c[0], 0.0, 1.0)
    return Polynomial(c)


def constant(c):
    return Polynomial([complex(c)])


IDENTITY = Mobius(1.0, 0.0, 0.0, 1.0)


# --------------------------------------------------------------------------
# transcendental family
# --------------------------------------------------------------------------


class ExpMap(AnalyticMap):
    """exp(inner)."""

    kind = "exp"

    def __init__(self, inner):
        self.inner = inner

    def eval(self, z):
        out = np.exp(self.inner.eval(z))
        return complex(out) if _is_scalar(z) else out

    def derivative(self, z):
        out = np.exp(self.inner.eval(z)) * self.inner.derivative(z)
        return complex(out) if _is_scalar(z) else out

    def series(self, s, n):
        return _kernels.series_exp(self.inner.series(s, n), n)

    def __repr__(self):
        return f"exp({self.inner!r})"


class Transcendental(AnalyticMap):
    """Map given by a vectorized evaluator, derivative and coefficient generator.

    ``coefficients(n)`` must return the first n Taylor coefficients at 0. Only
    compositions with inner maps fixing 0 can be expanded.
    """

    kind = "transcendental"

    def __init__(self, name, evaluator, derivative, coefficients):
        self.name = name
        self._f = evaluator
        self._df = derivative
        self._coeffs = coefficients

    def eval(self, z):
        out = self._f(z)
        return complex(out) if _is_scalar(z) else np.asarray(out, dtype=np.complex128)

    def derivative(self, z):
        out = self._df(z)
        return complex(out) if _is_scalar(z) else np.asarray(out, dtype=np.complex128)

    def taylor(self, n):
        return np.asarray(self._coeffs(n), dtype=np.complex128)[:n]

    def series(self, s, n):
        if abs(s[0]) > 1e-15:
            raise UnsupportedRepresentation(
                f"{self.name}: cannot re-expand about g(0) = {s[0]}"
            )
        return _horner_series(self.taylor(n), s, n)

    def __repr__(self):
        return f"Transcendental({self.name})"


class Sum(AnalyticMap):
    kind = "sum"

    def __init__(self, left, right):
        self.left, self.right = left, right

    def eval(self, z):
        return self.left.eval(z) + self.right.eval(z)

    def derivative(self, z):
        return self.left.derivative(z) + self.right.derivative(z)

    def series(self, s, n):
        return self.left.series(s, n) + self.right.series(s, n)

    def __repr__(self):
        return f"({self.left!r} + {self.right!r})"


class Product(AnalyticMap):
    kind = "product"

    def __init__(self, left, right):
        self.left, self.right = left, right

    def eval(self, z):
        return self.left.eval(z) * self.right.eval(z)

    def derivative(self, z):
        return (self.left.derivative(z) * self.right.eval(z)
                + self.left.eval(z) * self.right.derivative(z))

    def series(self, s, n):
        return _kernels.series_mul(self.left.series(s, n), self.right.series(s, n), n)

    def __repr__(self):
        return f"({self.left!r} * {self.right!r})"


class Quotient(AnalyticMap):
    kind = "quotient"

    def __init__(self, num, den):
        self.num, self.den = num, den

    def eval(self, z):
        d = self.den.eval(z)
        if np.any(d == 0):
            raise PoleOnDomain(f"denominator vanishes at {z}")
        return self.num.eval(z) / d

    def derivative(self, z):
        d = self.den.eval(z)
        if np.any(d == 0):
            raise PoleOnDomain(f"denominator vanishes at {z}")
        return (self.num.derivative(z) * d - self.num.eval(z) * self.den.derivative(z)) / (d * d)

    def series(self, s, n):
        den = self.den.series(s, n)
        if den[0] == 0:
            raise PoleOnDomain("pole at the expansion point")
        return _kernels.series_div(self.num.series(s, n), den, n)

    def __repr__(self):
        return f"({self.num!r} / {self.den!r})"


class Composition(AnalyticMap):
    """outer o inner."""

    kind = "composition"

    def __init__(self, outer, inner):
        self.outer, self.inner = outer, inner

    def eval(self, z):
        return self.outer.eval(self.inner.eval(z))

    def derivative(self, z):
        return self.outer.derivative(self.inner.eval(z)) * self.inner.derivative(z)

    def series(self, s, n):
        return self.outer.series(self.inner.series(s, n), n)

    def __repr__(self):
        return f"compose({self.outer!r}, {self.inner!r})"


# --------------------------------------------------------------------------
# constructors
# --------------------------------------------------------------------------


def as_map(x):
    if isinstance(x, AnalyticMap):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return constant(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an analytic map")


def negate(f):
    f = as_map(f)
    r = f.rational()
    if r is not None:
        return make_rational(-r[0], r[1])
    return Product(constant(-1.0), f)


def add(f, g):
    f, g = as_map(f), as_map(g)
    rf, rg = f.rational(), g.rational()
    if rf is not None and rg is not None:
        num = P.polyadd(P.polymul(rf[0], rg[1]), P.polymul(rg[0], rf[1]))
        return make_rational(num, P.polymul(rf[1], rg[1]))
    return Sum(f, g)


def multiply(f, g):
    f, g = as_map(f), as_map(g)
    rf, rg = f.rational(), g.rational()
    if rf is not None and rg is not None:
        return make_rational(P.polymul(rf[0], rg[0]), P.polymul(rf[1], rg[1]))
    cf, cg = f.constant_value(), g.constant_value()
    if cf == 1:
        return g
    if cg == 1:
        return f
    return Product(f, g)


def divide(f, g):
    f, g = as_map(f), as_map(g)
    rf, rg = f.rational(), g.rational()
    if rg is not None and not np.any(_trim(rg[0])):
        raise DivisionByZeroStructure("division by the zero function")
    if rf is not None and rg is not None:
        return make_rational(P.polymul(rf[0], rg[1]), P.polymul(rf[1], rg[0]))
    if rg is None:
        _probe_not_identically_zero(g)
    return Quotient(f, g)


def _probe_not_identically_zero(g):
    pts = 0.5 * np.exp(2j * np.pi * np.arange(8) / 8 + 0.3j) * np.linspace(0.2, 1.0, 8)
    try:
        vals = g.eval(pts)
    except PoleOnDomain:
        return
    if np.all(vals == 0):
        raise DivisionByZeroStructure("denominator vanishes at every probe point")


def exp_map(inner):
    inner = as_map(inner)
    c = inner.constant_value()
    if c is not None:
        return constant(cmath.exp(c))
    return ExpMap(inner)


def _compose_rational(rf, rg):
    num_f, den_f = rf
    num_g, den_g = rg
    deg = max(num_f.size, den_f.size) - 1
    r_pows = [np.array([1.0 + 0j])]
    s_pows = [np.array([1.0 + 0j])]
    for _ in range(deg):
        r_pows.append(P.polymul(r_pows[-1], num_g))
        s_pows.append(P.polymul(s_pows[-1], den_g))

    def combine(coeffs):
        acc = np.zeros(1, dtype=np.complex128)
        for k, ck in enumerate(coeffs):
            if ck != 0:
                acc = P.polyadd(acc, ck * P.polymul(r_pows[k], s_pows[deg - k]))
        return acc

    return make_rational(combine(num_f), combine(den_f))


def compose(f, g):
    """f o g, exact for rational pairs and lazy otherwise."""
    f, g = as_map(f), as_map(g)
    cg = g.constant_value()
    if cg is not None:
        return constant(f.eval(cg))
    if f.constant_value() is not None:
        return f
    if isinstance(g, Mobius) and g.is_identity():
        return f
    if isinstance(f, Mobius) and f.is_identity():
        return g
    if isinstance(f, Mobius) and isinstance(g, Mobius):
        return _mobius_from_matrix(f.matrix @ g.matrix)
    rf, rg = f.rational(), g.rational()
    if rf is not None and rg is not None:
        return _compose_rational(rf, rg)
    return Composition(f, g)


def _mobius_from_matrix(m):
    scale = np.max(np.abs(m))
    if scale > 1e100 or scale < 1e-100:
        m = m / scale
    return Mobius.from_matrix(m)


def iterate(f, n):
    """n-th iterate f o f o ... o f, with f_0 the identity."""
    if n < 0:
        raise ValueError("iterate count must be non-negative")
    f = as_map(f)
    if n == 0:
        return IDENTITY
    if isinstance(f, Mobius):
        return _mobius_from_matrix(np.linalg.matrix_power(f.matrix, n))
    out = f
    for _ in range(n - 1):
        out = compose(f, out)
    return out


def eval_map(f, z):
    return as_map(f).eval(z)


def derivative_at(f, z):
    return as_map(f).derivative(z)


def taylor(f, n):
    if n < 1:
        raise ValueError("need at least one coefficient")
    return as_map(f).taylor(int(n))
