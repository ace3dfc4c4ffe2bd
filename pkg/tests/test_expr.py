import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardyops.errors import DivisionByZeroStructure, ExprSyntaxError
from hardyops.expr import (
    BinOp,
    Compose,
    Exp,
    MobiusLit,
    Neg,
    Num,
    Var,
    parse_expr,
    parse_symbol,
    to_text,
)
from hardyops.symbols import ExpMap, Mobius


def test_mobius_detected():
    m = parse_symbol("z/(2-z)")
    assert isinstance(m, Mobius)
    assert (m.a, m.b, m.c, m.d) == (1, 0, -1, 2)


def test_exp_is_transcendental():
    f = parse_symbol("exp(z)")
    assert isinstance(f, ExpMap)
    assert f(0) == 1


def test_weight_value_at_one():
    assert parse_symbol("2*exp(z)/(2-z)")(1.0) == pytest.approx(2 * math.e, rel=1e-12)


@pytest.mark.parametrize("text,offset", [("z//", 2), ("(z", 2), ("exp z", 4), ("z + $", 4), ("", 0)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_symbol(text)
    assert info.value.offset == offset
    assert isinstance(info.value, SyntaxError)


def test_degenerate_mobius_rejected():
    with pytest.raises(ExprSyntaxError):
        parse_symbol("mobius(1,2,2,4)")


def test_zero_denominator():
    with pytest.raises(DivisionByZeroStructure):
        parse_symbol("1/(z-z)")


@pytest.mark.parametrize(
    "text,value",
    [("2i", 2j), ("(1+2i)", 1 + 2j), ("(-1.5-0.25i)", -1.5 - 0.25j), ("i", 1j), ("3", 3), ("-2", -2), ("1e-3", 1e-3)],
)
def test_complex_literals(text, value):
    assert parse_symbol(text).constant_value() == pytest.approx(value)


def test_whitespace_insignificant():
    a = parse_symbol(" 2 * exp ( z ) / ( 2 - z ) ")
    b = parse_symbol("2*exp(z)/(2-z)")
    z = np.array([0.1, -0.3j, 0.5 + 0.2j])
    assert np.allclose(a(z), b(z), rtol=1e-15)


def test_precedence():
    assert parse_symbol("1+2*z")(1.0) == 3
    assert parse_symbol("-z*z")(2.0) == -4
    assert parse_symbol("1-2-3")(0.0) == -4
    assert parse_symbol("8/4/2")(0.0) == 1


def test_compose_inner_first():
    f = parse_symbol("compose(exp(z), z/2)")
    assert f(1.0) == pytest.approx(math.exp(0.5), rel=1e-14)


def test_mobius_literal_matches_formula():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b, c, d = (complex(x) for x in rng.normal(size=4) + 1j * rng.normal(size=4))
        text = "mobius(" + ",".join(f"({x.real!r}{'+' if x.imag >= 0 else '-'}{abs(x.imag)!r}i)" for x in (a, b, c, d)) + ")"
        m = parse_symbol(text)
        z = 0.9 * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
        z = z[np.abs(c * z + d) > 1e-3]
        want = (a * z + b) / (c * z + d)
        assert np.max(np.abs(m(z) - want) / np.abs(want)) <= 1e-12


# -- round trip over generated trees ---------------------------------------

reals = st.floats(allow_nan=False, allow_infinity=False, width=64).map(lambda x: x + 0.0)
nums = st.builds(lambda x, y: Num(complex(x, y)), reals, st.one_of(st.just(0.0), reals))
mobius = st.tuples(nums, nums, nums, nums).filter(
    lambda t: t[0].value * t[3].value - t[1].value * t[2].value != 0
).map(lambda t: MobiusLit(*(n.value for n in t)))
leaves = st.one_of(nums, st.just(Var()), mobius)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Exp, children),
        st.builds(Compose, children, children),
    )


trees = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=1000, deadline=None)
@given(trees)
def test_print_parse_round_trip(tree):
    text = to_text(tree)
    again = parse_expr(text).ast
    assert again == tree
    assert to_text(again) == text


def test_round_trip_examples():
    for text in ["z/(2-z)", "2*exp(z)/(2-z)", "exp(-z)", "(z+1)/2", "compose(exp(z),mobius(1,0,-1,2))", "z-(2i)"]:
        printed = str(parse_expr(text))
        assert str(parse_expr(printed)) == printed
        z = 0.3 + 0.2j
        assert cmath.isclose(parse_symbol(printed)(z), parse_symbol(text)(z), rel_tol=1e-14)
