import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gaussdioph.errors import PolySyntaxError, ReservedName, TooLarge, UnboundVariable
from gaussdioph.expr import (
    Const,
    Negate,
    Power,
    Product,
    Sum,
    Var,
    dag_size,
    degree_bound,
    evaluate,
    expand,
    free_vars,
    parse,
    render,
    substitute,
)
from gaussdioph.gadgets import eval_F
from gaussdioph.gaussian import GaussianInt, I
from gaussdioph.reduction import build_F_template

from conftest import random_assignment, random_expr

x, y, z = Var("x"), Var("y"), Var("z")


def test_parse_sum_of_squares():
    expected = Sum([Power(x, 2), Product([Const(2), Power(y, 2)])])
    assert parse("x^2+2*y^2") == expected


def test_parse_imaginary_unit():
    e = parse("i^2+1")
    assert free_vars(e) == []
    assert evaluate(e, {}) == 0


def test_parse_power_of_sum():
    assert parse("(2*z+1)^2") == Power(Sum([Product([Const(2), z]), Const(1)]), 2)


def test_parse_unary_minus_binds_tighter_than_power():
    assert evaluate(parse("-x^3"), {"x": 2}) == -8
    assert evaluate(parse("-2^2"), {}) == 4
    assert evaluate(parse("a-2^2"), {"a": 0}) == -4


def test_parse_comments_and_whitespace():
    text = "# header comment\n  x *\n y   # trailing\n + 3\n"
    assert evaluate(parse(text), {"x": 2, "y": 5}) == 13


def test_parse_big_literals():
    n = 10**80 + 7
    assert evaluate(parse(f"{n}*x"), {"x": 3}) == 3 * n


def test_sum_and_product_equality_ignores_order():
    assert parse("x+y") == parse("y+x")
    assert parse("x*y*2") == parse("2*y*x")
    assert parse("x-y") != parse("y-x")


@pytest.mark.parametrize("text, line, column", [
    ("x + * y", 1, 5),
    ("x +\n  (y", 2, 5),
    ("x ^ y", 1, 5),
    ("x ^ 0", 1, 5),
    ("3 $ 4", 1, 3),
    ("x y", 1, 3),
    ("", 1, 1),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(PolySyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert info.value.code == "SyntaxError"


def test_i_is_reserved():
    with pytest.raises(ReservedName):
        Var("i")
    # identifiers merely starting with i are ordinary variables
    assert free_vars(parse("i1 + ix + i*x")) == ["i1", "ix", "x"]


@pytest.mark.parametrize("e, text", [
    (Const(-1), "-1"),
    (Power(Var("v"), 2), "v^2"),
    (Const(I), "i"),
    (Const(GaussianInt(3, -4)), "(3-4*i)"),
])
def test_render_examples(e, text):
    assert render(e) == text


@pytest.mark.parametrize("e", [
    Power(Const(-5), 2),
    Sum([Var("a"), Power(Const(-5), 3)]),
    Sum([Var("a"), Product([Power(Const(-2), 2), x])]),
    Negate(Power(x, 3)),
    Power(Negate(x), 3),
    Negate(Const(-4)),
    Product([x, Negate(y), Const(-3)]),
    Power(Power(x, 2), 3),
    Sum([Negate(Product([x, y])), Negate(Sum([x, Const(1)]))]),
])
def test_render_tricky_shapes(e):
    rng = random.Random(1)
    for _ in range(5):
        sigma = {"a": GaussianInt(rng.randint(-5, 5), rng.randint(-5, 5)), **random_assignment(rng)}
        assert evaluate(parse(render(e)), sigma) == evaluate(e, sigma)


def test_template_render_round_trip():
    template = build_F_template()
    reparsed = parse(render(template))
    rng = random.Random(7)
    for _ in range(100):
        vals = [GaussianInt(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(5)]
        assert evaluate(reparsed, dict(zip("vwxyz", vals))) == eval_F(*vals)


def test_evaluate_examples():
    assert evaluate(parse("x^2+2*y^2"), {"x": 0, "y": 0}) == 0
    sigma = {"v": 65, "w": 362, "x": 0, "y": 209, "z": 0}
    assert evaluate(build_F_template(), sigma) == 0
    with pytest.raises(UnboundVariable) as info:
        evaluate(parse("z"), {})
    assert info.value.name == "z"


def test_evaluate_shared_dag_once():
    # 200 nested squarings of a shared node would be astronomically slow as a tree
    node = Sum([x, Const(1)])
    for _ in range(200):
        node = Sum([node, node])
    assert dag_size(node) == 203
    assert evaluate(node, {"x": 1}) == 2 * 2**200


def test_substitute_examples():
    e = substitute(parse("x+y"), {"x": parse("2*u")})
    assert e == parse("2*u+y")
    t = substitute(build_F_template(), {n: Var(n + "3") for n in "vwxyz"})
    assert free_vars(t) == ["v3", "w3", "x3", "y3", "z3"]
    f = parse("x*y+z^2")
    assert substitute(f, {"x": x, "y": y}) == f
    assert substitute(f, {}) is f


def test_substitute_is_simultaneous():
    swapped = substitute(parse("x - 2*y"), {"x": y, "y": x})
    assert evaluate(swapped, {"x": 1, "y": 10}) == 8


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_substitute_respects_evaluation(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 5)
    g = random_expr(rng, 3)
    sigma = random_assignment(rng)
    inner = evaluate(g, sigma)
    assert evaluate(substitute(e, {"x": g}), sigma) == evaluate(e, {**sigma, "x": inner})


def _dict(poly):
    return {tuple(m): c for m, c in poly.as_dict().items()}


def test_expand_examples():
    assert _dict(expand(parse("(x+y)^2"), 100)) == {
        (("x", 2),): 1, (("x", 1), ("y", 1)): 2, (("y", 2),): 1,
    }
    assert _dict(expand(parse("(x+i)*(x-i)"), 100)) == {(("x", 2),): 1, (): 1}


def test_expand_cancels_to_zero():
    assert expand(parse("x*y - y*x"), 10).terms == {}


def test_expand_too_large():
    with pytest.raises(TooLarge) as info:
        expand(parse("(x+y+z+w+1)^12"), 1000)
    assert info.value.limit == 1000


def _sympy_coefficients(text):
    syms = sympy.symbols("v w x y z")
    expr = sympy.sympify(text.replace("^", "**"), locals=dict(zip("vwxyz", syms)))
    poly = sympy.Poly(sympy.expand(expr), *syms)
    out = {}
    for mono, coeff in poly.terms():
        key = tuple((n, p) for n, p in zip("vwxyz", mono) if p)
        out[key] = GaussianInt(int(coeff))
    return out


def test_expand_template_matches_sympy():
    template = build_F_template()
    poly = expand(template, 10**6)
    assert _dict(poly) == _sympy_coefficients(render(template))
    rng = random.Random(3)
    for _ in range(100):
        vals = [GaussianInt(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(5)]
        assert poly.evaluate(dict(zip("vwxyz", vals))) == eval_F(*vals)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_expand_agrees_with_evaluate(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 5)
    try:
        poly = expand(e, 10**4)
    except TooLarge:
        return
    for _ in range(5):
        sigma = random_assignment(rng)
        assert poly.evaluate(sigma) == evaluate(e, sigma)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_parse_render_round_trip(seed):
    rng = random.Random(seed)
    e = random_expr(rng, 6)
    back = parse(render(e))
    twice = parse(render(back))
    for _ in range(5):
        sigma = random_assignment(rng)
        assert evaluate(back, sigma) == evaluate(twice, sigma) == evaluate(e, sigma)


def test_free_vars():
    assert free_vars(parse("x^2+2*y^2")) == ["x", "y"]
    assert free_vars(Const(5)) == []
    assert free_vars(parse("z10 + z2 + z1 + a")) == ["a", "z1", "z2", "z10"]


def test_degree_bound():
    assert degree_bound(parse("(x*y+1)^3 + z")) == 6
    assert degree_bound(build_F_template()) == 12
    assert degree_bound(Const(4)) == 0


def test_expressions_are_immutable():
    with pytest.raises(AttributeError):
        x.name = "q"
