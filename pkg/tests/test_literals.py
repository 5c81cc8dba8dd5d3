import pytest

from kgroups.errors import KGroupsError, ParseError, Reducible
from kgroups.literals import (parse_curve, parse_element, parse_field, parse_field_or_curve, parse_function,
                              parse_group, parse_place, parse_point, parse_symbol, split_top)


def test_split_top_respects_brackets():
    assert split_top("a,(b,c),[d,e]", ",") == ["a", "(b,c)", "[d,e]"]
    assert split_top("Gm x E(GF(5); 0,1)", " x ") == ["Gm", "E(GF(5); 0,1)"]


def test_fields():
    assert parse_field("GF(9)").order == 9
    assert parse_field("GF(2^4)").m == 4
    F = parse_field("GF(3^2; 1,0,1)")
    assert F.modulus == (1, 0, 1)
    for bad in ["GF(6)", "GF(4^2)", "GF(3^2; 1,1)", "F(5)", "GF(x)"]:
        with pytest.raises(ParseError):
            parse_field(bad)
    # a reducible modulus keeps its own error type (with a factor as witness)
    with pytest.raises(Reducible) as info:
        parse_field("GF(3^2; 2,0,1)")
    assert isinstance(info.value, KGroupsError)


def test_elements():
    F = parse_field("GF(3^2; 1,0,1)")
    assert parse_element(F, "[0,1]") ** 2 == -1
    assert parse_element(F, "5") == 2
    with pytest.raises(ParseError):
        parse_element(F, "[1,2,3]")


def test_curves_and_functions():
    E = parse_curve("E(GF(5); 0,1)")
    assert E.is_elliptic
    assert parse_field_or_curve("P1(GF(7))").base.order == 7
    f = parse_function(E, "y^2 - x^3")
    assert f == 1
    K = parse_field_or_curve("P1(GF(5))")
    assert parse_function(K, "(t^2+1)/(t-1)") * (K.t - 1) == K.t ** 2 + 1
    for bad in ["z", "t^t", "1/(t-t)", "import os"]:
        with pytest.raises(ParseError):
            parse_function(K, bad)
    with pytest.raises(ParseError):
        parse_function(E, "t")


def test_places():
    K = parse_field_or_curve("P1(GF(5))")
    assert repr(parse_place(K, "v(inf)")) == "v(inf)"
    assert parse_place(K, "v(t^2+2)").degree == 2
    with pytest.raises(ParseError):
        parse_place(K, "v(t^2-1)")
    with pytest.raises(ParseError):
        parse_place(K, "v(O)")
    E = parse_curve("E(GF(5); 0,1)")
    assert parse_place(E, "v(2,2)").point == (2, 2)
    assert parse_place(E, "v(O)") == E.infinite_place()
    with pytest.raises(ParseError):
        parse_place(E, "v(1,1)")
    with pytest.raises(ParseError):
        parse_place(E, "v(x)")  # two places over x = 0
    assert parse_place(E, "v(x-4)").point[0] == 4


def test_symbols():
    s = parse_symbol("{t,1-t}@P1(GF(5))")
    assert s.length == 2
    E = parse_curve("E(GF(5); 0,1)")
    s = parse_symbol("{x,y,x+1}", field=E)
    assert s.length == 3
    with pytest.raises(ParseError):
        parse_symbol("{t,1-t}")
    with pytest.raises(ParseError):
        parse_symbol("{}@P1(GF(5))")
    with pytest.raises(ParseError):
        parse_symbol("{t,0}@P1(GF(5))")


def test_groups_and_points():
    K = parse_field_or_curve("P1(GF(5))")
    G = parse_group("Gm x E(GF(5); 0,1)", K.base)
    assert G.n == 1 and G.E is not None
    assert parse_group("Gm^3", K.base).n == 3
    P = parse_point(G, K, "((t),(2,2))")
    assert P.torus == (K.t,) and P.ell == (K.const(2), K.const(2))
    assert parse_point(G, K, "((t+1),O)").ell is None
    assert parse_point(parse_group("Gm^2", K.base), K, "(t,2)").torus[1] == 2
    with pytest.raises(ParseError):
        parse_group("E(GF(5); 0,1) x E(GF(5); 0,1)", K.base)
    with pytest.raises(ParseError):
        parse_group("Gm x E(GF(7); 0,1)", K.base)
    with pytest.raises(ParseError):
        parse_point(G, K, "((t),(1,1))")
    with pytest.raises(ParseError):
        parse_point(G, K, "((0),O)")
