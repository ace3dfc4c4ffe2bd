"""Reproducing kernels, canonical weights and the unitary conjugation pair."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import AnchorNotInterior, NotFixedPoint
from .dynamics import FIXED_POINT_TOL
from .maps import IDENTITY, Mobius, as_map, compose, constant, make_rational


@dataclass(frozen=True)
class KernelFunction:
    """K_a(z) = 1 / (1 - conj(a) z), the reproducing kernel at a."""

    anchor: complex

    def __post_init__(self):
        if abs(self.anchor) >= 1:
            raise AnchorNotInterior(f"kernel anchor {self.anchor} is not in the open disk")

    def __call__(self, z):
        return 1.0 / (1.0 - np.conj(self.anchor) * np.asarray(z))

    @property
    def norm(self):
        """H^2 norm, (1 - |a|^2)^(-1/2)."""
        return 1.0 / math.sqrt(1.0 - abs(self.anchor) ** 2)

    def as_map(self):
        return make_rational([1.0], [1.0, -np.conj(self.anchor)])


def kernel(a):
    return KernelFunction(complex(a))


def kernel_as_map(a):
    return kernel(a).as_map()


def _check_fixed(phi, a):
    if abs(a) >= 1:
        raise AnchorNotInterior(f"{a} is not in the open disk")
    err = abs(phi.eval(a) - a)
    if err > FIXED_POINT_TOL:
        raise NotFixedPoint(f"|phi(a) - a| = {err:.3e} at a = {a}")


def canonical_weight(phi, a, c):
    """c * K_a / (K_a o phi), the only weights with ||W|| = |psi(a)|."""
    phi = as_map(phi)
    a = complex(a)
    _check_fixed(phi, a)
    if a == 0:
        return constant(c)
    abar = a.conjugate()
    return constant(c) * (1 - abar * phi) / make_rational([1.0, -abar], [1.0])


def conjugation_pair(a):
    """(zeta, tau) with W_{zeta,tau} unitary and tau the involution swapping 0 and a."""
    a = complex(a)
    if abs(a) >= 1:
        raise AnchorNotInterior(f"{a} is not in the open disk")
    abar = a.conjugate()
    zeta = make_rational([math.sqrt(1 - abs(a) ** 2)], [1.0, -abar])
    tau = Mobius(-1.0, a, -abar, 1.0)
    return zeta, tau


def mobius_fixing(a, lam, q=0.0):
    """tau o m o tau with m(z) = lam z / (1 - q z); fixes a with derivative lam there.

    It is a self-map of the disk when |lam| + |q| <= 1.
    """
    _, tau = conjugation_pair(a)
    return compose(tau, compose(Mobius(lam, 0.0, -q, 1.0), tau))


def conjugated_symbols(psi, phi, a):
    """Symbols (f, g) of W_{zeta,tau} W_{psi,phi} W_{zeta,tau}.

    f = zeta * (psi o tau) * (zeta o phi o tau) and g = tau o phi o tau, so g
    fixes 0 whenever phi fixes a.
    """
    psi, phi = as_map(psi), as_map(phi)
    a = complex(a)
    _check_fixed(phi, a)
    zeta, tau = conjugation_pair(a)
    phi_tau = compose(phi, tau)
    f = zeta * compose(psi, tau) * compose(zeta, phi_tau)
    g = compose(tau, phi_tau)
    return f, g


__all__ = [
    "IDENTITY",
    "KernelFunction",
    "canonical_weight",
    "conjugated_symbols",
    "conjugation_pair",
    "kernel",
    "kernel_as_map",
    "mobius_fixing",
]
