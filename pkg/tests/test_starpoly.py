import pytest
from hypothesis import given, settings, strategies as st

from pistar.starpoly import (Commutator, Jordan, ParseError, Product, SignedVar, Var,
                             check_multilinear, parse, poly, render, render_ast)


def x(i, s):
    return Var(SignedVar(i, s))


def test_parse_shapes():
    assert parse("[x1-, x2-, x3-]") == Commutator((x(1, "-"), x(2, "-"), x(3, "-")))
    assert parse("x1- x2- x3- x4- x5-") == Product(tuple(x(i, "-") for i in range(1, 6)))
    assert parse("{[x1-,x2-], x3-}") == Jordan(Commutator((x(1, "-"), x(2, "-"))), x(3, "-"))


def test_expansions():
    assert render(poly("[x1+,x2+]")) == "x1+ x2+ - x2+ x1+"
    assert len(poly("[x1+,x2+][x3+,x4+][x5+,x6+]").terms) == 8
    assert set(poly("[x1+,x2+][x3+,x4+][x5+,x6+]").terms.values()) <= {1, -1}
    p = poly("[x1-,x2-,x3-]")
    assert p == poly("x1- x2- x3- - x2- x1- x3- - x3- x1- x2- + x3- x2- x1-")
    assert poly("{x1+, x2+}") == poly("x1+ x2+ + x2+ x1+")


def test_left_normed():
    assert poly("[x1+,x2+,x3+]") == poly("[[x1+,x2+],x3+]")


def test_multilinearity():
    ok, slots = check_multilinear(poly("[x1- x2-, x1+]"))
    assert ok and [str(s) for s in slots] == ["x1+", "x1-", "x2-"]
    assert not check_multilinear(poly("x1- x1-"))[0]
    assert not check_multilinear(poly("x1+ + x2+"))[0]


@pytest.mark.parametrize("bad", ["[x1+,", "x1", "x1+ ]", "[x1+]", "y1+", "", "x1+ / 0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        poly(bad)


def test_error_position():
    with pytest.raises(ParseError) as info:
        poly("[x1+, x2")
    assert info.value.position == 8


def _node(depth):
    leaf = st.builds(lambda i, s: x(i, s), st.integers(1, 5), st.sampled_from("+-"))
    if depth == 0:
        return leaf
    sub = _node(depth - 1)
    return st.one_of(
        leaf,
        st.lists(sub, min_size=2, max_size=3).map(lambda fs: Product(tuple(fs))),
        st.lists(sub, min_size=2, max_size=3).map(lambda fs: Commutator(tuple(fs))),
        st.tuples(sub, sub).map(lambda t: Jordan(*t)),
    )


@settings(max_examples=150, deadline=None)
@given(_node(2))
def test_render_round_trip(tree):
    text = render_ast(tree)
    assert poly(text) == poly(render_ast(parse(text)))
    normal = render(poly(text))
    assert render(poly(normal)) == normal


def test_rename():
    p = poly("[x1+,x2+][x4+,x5+]")
    m = {SignedVar(4, "+"): SignedVar(3, "+"), SignedVar(5, "+"): SignedVar(4, "+")}
    assert p.rename(m) == poly("[x1+,x2+][x3+,x4+]")
