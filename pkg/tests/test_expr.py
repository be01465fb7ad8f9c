import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hadamard.errors import ArityError, DomainError, NumericalFailure, ParseError, UnknownIdentifierError
from hadamard.expr import BinOp, Call, Neg, Num, Var, compile_expr, evaluate, parse, slice_fn, to_source


def test_parse_sum():
    assert parse("x+y") == BinOp("+", Var("x"), Var("y"))


def test_power_is_right_associative():
    assert evaluate("2^3^2", 0, 0) == 512.0
    assert evaluate("(2^3)^2", 0, 0) == 64.0


def test_unary_minus_and_power():
    # factor := "-" factor | power, so -x^2 is -(x^2)
    assert evaluate("-x^2", 3, 0) == -9.0
    assert evaluate("2^-1", 0, 0) == 0.5
    assert parse("--x") == Neg(Neg(Var("x")))


def test_precedence():
    assert evaluate("1+2*3", 0, 0) == 7.0
    assert evaluate("8/4/2", 0, 0) == 1.0
    assert evaluate("2-3-4", 0, 0) == -5.0
    assert evaluate("-2*3", 0, 0) == -6.0


def test_spec_eval_examples():
    assert evaluate("x+y", 0.25, 0.5) == 0.75
    assert evaluate("exp(0)*x", 1, 7) == 1.0
    with pytest.raises(DomainError):
        evaluate("log(x)", -1, 0)


def test_functions():
    assert evaluate("sqrt(x)", 4, 0) == 2.0
    assert evaluate("abs(x - y)", 1, 3) == 2.0
    assert evaluate("min(x, y, 0.5)", 1, 3) == 0.5
    assert evaluate("max(x, y)", 1, 3) == 3.0
    assert evaluate("pow(x, 3)", 2, 0) == 8.0
    assert evaluate("log(exp(1))", 0, 0) == 1.0


def test_literals_and_whitespace():
    assert evaluate(" 1.5e1 +\t.5 ", 0, 0) == 15.5
    assert evaluate("2E-1", 0, 0) == 0.2
    with pytest.raises(ParseError):
        parse("0x10")


@pytest.mark.parametrize("src, offset", [("x + ", 4), (")", 0), ("x y", 2), ("(x", 2), ("x $ y", 2)])
def test_syntax_error_offsets(src, offset):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.offset == offset


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError):
        parse("z + 1")
    with pytest.raises(UnknownIdentifierError):
        parse("sin(x)")


@pytest.mark.parametrize("src", ["exp(x, y)", "pow(x)", "max(x)", "sqrt()"])
def test_arity(src):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert isinstance(info.value, (ArityError, ParseError))


def test_arity_error_type():
    with pytest.raises(ArityError):
        parse("pow(x)")


@pytest.mark.parametrize(
    "src, x, y",
    [("1/x", 0, 0), ("sqrt(x)", -1, 0), ("log(0)", 0, 0), ("x^0.5", -4, 0), ("x^-1", 0, 0)],
)
def test_domain_errors(src, x, y):
    with pytest.raises(DomainError):
        evaluate(src, x, y)


def test_negative_base_integer_power():
    assert evaluate("x^3", -2, 0) == -8.0
    assert evaluate("x^2", -2, 0) == 4.0


def test_overflow_is_numerical_failure():
    with pytest.raises(NumericalFailure):
        evaluate("exp(x)", 1000, 0)


def test_vectorised_domain_error_on_any_element():
    f = compile_expr("log(x)")
    with pytest.raises(DomainError):
        f(np.array([1.0, 0.5, -1.0]), 0.0)


def test_vectorised_matches_scalar():
    f = compile_expr("x*y + exp(-x) - sqrt(abs(y))")
    xs = np.linspace(-1, 1, 7)
    ys = np.linspace(0, 2, 7)
    vec = f(xs, ys)
    assert all(vec[i] == f(float(xs[i]), float(ys[i])) for i in range(7))


def test_slice_examples():
    assert slice_fn(compile_expr("x*y"), "fix-y", 2)(3) == 6.0
    assert slice_fn(compile_expr("x+y"), "fix-x", 0)(1.25) == 1.25


def test_slice_rejects_bad_axis():
    with pytest.raises(ValueError):
        slice_fn(compile_expr("x"), "fix-z", 0)
    with pytest.raises(ValueError):
        slice_fn(compile_expr("x"), "fix-x", math.inf)


def test_variables():
    assert compile_expr("x + 1").variables == {"x"}
    assert compile_expr("2").variables == set()


# --- generated expressions -------------------------------------------------

_leaf = st.one_of(
    st.floats(min_value=0, max_value=1e6, allow_nan=False, allow_infinity=False).map(Num),
    st.sampled_from([Var("x"), Var("y")]),
)


def _extend(child):
    return st.one_of(
        child.map(Neg),
        st.tuples(st.sampled_from("+-*/^"), child, child).map(lambda t: BinOp(*t)),
        st.tuples(st.sampled_from(["exp", "log", "sqrt", "abs"]), child).map(lambda t: Call(t[0], (t[1],))),
        st.tuples(st.sampled_from(["min", "max", "pow"]), child, child).map(lambda t: Call(t[0], t[1:])),
    )


asts = st.recursive(_leaf, _extend, max_leaves=12)

# smooth, everywhere-defined integrands for slice consistency
_safe = st.recursive(
    st.one_of(st.floats(-3, 3).map(Num), st.sampled_from([Var("x"), Var("y")])),
    lambda c: st.one_of(
        st.tuples(st.sampled_from("+-*"), c, c).map(lambda t: BinOp(*t)),
        c.map(lambda a: Call("abs", (a,))),
        st.tuples(c, c).map(lambda t: Call("max", t)),
    ),
    max_leaves=8,
)


@settings(max_examples=300, deadline=None)
@given(asts)
def test_print_parse_round_trip(ast):
    printed = to_source(ast)
    assert parse(printed) == ast
    assert to_source(parse(printed)) == printed


@settings(max_examples=150, deadline=None)
@given(_safe, st.floats(-2, 2), st.floats(-2, 2))
def test_slice_consistency_bitwise(ast, x, y):
    f = compile_expr(to_source(ast))
    assert slice_fn(f, "fix-y", y)(x) == f(x, y)
    assert slice_fn(f, "fix-x", x)(y) == f(x, y)


@settings(max_examples=100, deadline=None)
@given(_safe, st.floats(-2, 2), st.floats(-2, 2))
def test_evaluation_purity(ast, x, y):
    f = compile_expr(to_source(ast))
    first = f(x, y)
    assert all(f(x, y) == first for _ in range(3))
