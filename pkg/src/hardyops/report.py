"""Analysis pipeline and its JSON report.

Documents hold plain data (dicts, lists, floats, complex); complex numbers
are written as ``{"re": x, "im": y}`` and floats use Python's shortest
round-trip repr, so reading a report back gives an equal document.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__, _kernels
from .classify import ClassifyOptions, classify
from .errors import HypothesisUnmet
from .expr import parse_symbol
from .spectra import (
    DEFAULT_LADDER,
    SpectralReport,
    cphi_norm_bounds,
    eigenvalue_list_theory,
    essential_norm_bound,
    ladder_evidence,
    wco_spectral_radius_theory,
)
from .symbols.dynamics import denjoy_wolff, require_self_map

SCHEMA = 1
ASSERTIONS = ("univalent", "non_inner", "uci")


@dataclass
class AnalysisRequest:
    psi_text: str
    phi_text: str
    trunc_ladder: list = field(default_factory=lambda: list(DEFAULT_LADDER))
    angles: int = 64
    assertions: list = field(default_factory=list)
    output_path: str | None = None
    seed: int = 0
    factor_text: str | None = None

    def __post_init__(self):
        self.trunc_ladder = [int(n) for n in self.trunc_ladder]
        if not self.trunc_ladder or any(b <= a for a, b in zip(self.trunc_ladder, self.trunc_ladder[1:])):
            raise ValueError("truncation ladder must be non-empty and strictly increasing")
        if min(self.trunc_ladder) < 2:
            raise ValueError("truncation orders must be at least 2")
        if self.angles < 16:
            raise ValueError("need at least 16 angles")
        unknown = set(self.assertions) - set(ASSERTIONS)
        if unknown:
            raise ValueError(f"unknown assertions {sorted(unknown)}; choose from {ASSERTIONS}")
        self.assertions = sorted(set(self.assertions))


@dataclass
class ReportDocument:
    request: dict
    denjoy_wolff: dict
    spectral: dict
    classification: dict
    versions: dict
    seed: int
    exit_code: int = 0
    schema: int = SCHEMA

    def to_json(self, indent=2):
        return json.dumps(encode(dataclasses.asdict(self)), indent=indent)

    @classmethod
    def from_json(cls, text):
        data = decode(json.loads(text))
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)


# --------------------------------------------------------------------------
# plain-data conversion
# --------------------------------------------------------------------------


def plain(obj):
    """Dataclasses, tuples and numpy values to dicts, lists and Python scalars."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        return complex(obj)
    return obj


def encode(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [encode(v) for v in obj]
    return obj


def decode(obj):
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return complex(obj["re"], obj["im"])
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    return obj


# --------------------------------------------------------------------------
# pipeline
# --------------------------------------------------------------------------


def spectral_report(psi, phi, dw, evidence, theory):
    prov = {
        "norm_estimate": f"power iteration on A^H A, seed {evidence.seed}, relative tolerance 1e-10",
        "spectral_radius_matrix": "LAPACK eigenvalues of the largest section",
        "gelfand_trace": "spectral norms of section powers",
        "numerical_radius": "supporting lines of rotated Hermitian parts",
    }
    bounds = None
    c = psi.constant_value()
    if c is not None:
        lo, hi = cphi_norm_bounds(phi)
        bounds = [abs(c) * lo, abs(c) * hi]
        prov["norm_bounds"] = "|psi| times the |phi(0)| bounds for composition operators"
    rho = None
    ess_radius = None
    ess_norm = None
    eigen = None
    if theory is not None:
        prov["spectral_radius_theory"] = f"closed form, branch {theory.branch}"
        if theory.justified:
            rho = theory.value
        if theory.branch == "power_compact":
            ess_radius = 0.0
        elif "essential" in theory.terms:
            ess_radius = theory.terms["essential"]
            prov["essential_spectral_radius_theory"] = "|psi(b)| times the contact-set formula"
            b = theory.terms["establishing_point"]
            _, ess_norm = essential_norm_bound(psi, phi, b)
            prov["essential_norm_lower"] = "kernel sequence toward b at r = 1 - 2^-20"
    if dw.interior:
        eigen = eigenvalue_list_theory(psi, phi, dw, 8)
        prov["eigenvalues_theory"] = "psi(a) phi'(a)^k"
    nr_order = max(evidence.numerical_radii)
    return SpectralReport(
        norm_estimate=evidence.norm,
        norm_bounds=bounds,
        spectral_radius_matrix=evidence.spectral_radii[-1],
        spectral_radius_theory=rho,
        gelfand_trace=[list(t) for t in evidence.gelfand],
        essential_spectral_radius_theory=ess_radius,
        essential_norm_lower=ess_norm,
        numerical_radius=evidence.numerical_radii[nr_order],
        numerical_range_boundary=list(evidence.numerical_range.points),
        eigenvalues_theory=eigen,
        truncation_orders=list(evidence.orders),
        norm_ladder=list(evidence.norms),
        radius_ladder=list(evidence.spectral_radii),
        provenance=prov,
    )


def analyze(request: AnalysisRequest) -> ReportDocument:
    """Parse, locate the attracting point, build sections, compute spectra and classify.

    Raises NotSelfMap when phi is refuted as a self-map; hypotheses that block
    the closed form give ``exit_code`` 2 instead of an exception.
    """
    psi = parse_symbol(request.psi_text)
    phi = parse_symbol(request.phi_text)
    require_self_map(phi)
    factor = parse_symbol(request.factor_text) if request.factor_text else None
    dw = denjoy_wolff(phi)
    evidence = ladder_evidence(psi, phi, request.trunc_ladder, request.angles, request.seed)
    theory = None
    blocked = []
    try:
        theory = wco_spectral_radius_theory(psi, phi, dw, request.assertions)
        if not theory.justified:
            blocked.extend(theory.unmet)
    except HypothesisUnmet as exc:
        blocked.append(str(exc))
    spectral = spectral_report(psi, phi, dw, evidence, theory)
    if theory is not None:
        spectral.provenance["hypotheses"] = dict(theory.hypotheses)
    opts = ClassifyOptions(
        ladder=tuple(request.trunc_ladder),
        angles=request.angles,
        assertions=tuple(request.assertions),
        factor=factor,
        seed=request.seed,
    )
    verdict = classify(psi, phi, opts, evidence)
    return ReportDocument(
        request=plain(request),
        denjoy_wolff=plain(dw),
        spectral=plain(spectral),
        classification=plain(verdict),
        versions=versions(),
        seed=request.seed,
        exit_code=2 if blocked else 0,
    )


def versions():
    import scipy

    out = {"hardyops": __version__, "numpy": np.__version__, "scipy": scipy.__version__, "backend": _kernels.backend()}
    if _kernels.HAVE_NUMBA:
        import numba

        out["numba"] = numba.__version__
    return out

