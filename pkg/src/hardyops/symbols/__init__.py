from .maps import (
    IDENTITY,
    AnalyticMap,
    Composition,
    ExpMap,
    Mobius,
    Polynomial,
    Product,
    Quotient,
    Rational,
    Sum,
    Transcendental,
    compose,
    constant,
    derivative_at,
    eval_map,
    exp_map,
    iterate,
    make_rational,
    taylor,
)
from .dynamics import (
    REFUTED,
    UNKNOWN,
    VERIFIED,
    DenjoyWolffData,
    SupNorm,
    UciResult,
    boundary_fixed_points,
    contact_set,
    denjoy_wolff,
    julia_caratheodory,
    mobius_fixed_points,
    radial_limit,
    self_map_check,
    sup_norm,
    uci_sufficient,
)
from .weights import (
    KernelFunction,
    canonical_weight,
    conjugated_symbols,
    conjugation_pair,
    kernel,
    kernel_as_map,
    mobius_fixing,
)

# short name alongside derivative_at and taylor
eval = eval_map  # noqa: A001

__all__ = [
    "IDENTITY",
    "AnalyticMap",
    "Composition",
    "ExpMap",
    "Mobius",
    "Polynomial",
    "Product",
    "Quotient",
    "Rational",
    "Sum",
    "Transcendental",
    "compose",
    "constant",
    "derivative_at",
    "eval_map",
    "exp_map",
    "iterate",
    "make_rational",
    "taylor",
    "REFUTED",
    "UNKNOWN",
    "VERIFIED",
    "DenjoyWolffData",
    "SupNorm",
    "UciResult",
    "boundary_fixed_points",
    "contact_set",
    "denjoy_wolff",
    "julia_caratheodory",
    "mobius_fixed_points",
    "radial_limit",
    "self_map_check",
    "sup_norm",
    "uci_sufficient",
    "KernelFunction",
    "canonical_weight",
    "conjugated_symbols",
    "conjugation_pair",
    "kernel",
    "kernel_as_map",
    "mobius_fixing",
    "eval",
]
