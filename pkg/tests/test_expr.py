import random

import pytest
from hypothesis import given, settings, strategies as st

from mwalgebra.algebra import AlgebraElement, equals
from mwalgebra.errors import CompositionError, ExpressionSyntaxError, GraphError
from mwalgebra.expr import format_scalar, parse, parse_scalar, to_string
from mwalgebra.sampling import random_element, random_graph
from mwalgebra.scalars import QQi


def test_parse_relation(cantor):
    assert equals(parse(cantor, "s(e1)^* * s(e1)"), AlgebraElement.p(cantor, "v"))
    assert equals(parse(cantor, "p(v) - s(e1)*s(e1)^* - s(e2)*s(e2)^*"), AlgebraElement.zero(cantor))
    assert equals(parse(cantor, "s(e1)^**s(e1)"), parse(cantor, "p(v)"))


def test_parse_paths_and_scalars(two_cycle):
    g = two_cycle
    x = parse(g, "1/2+3i * s(a,b) * s(c)^* - 2*(p(u) + s(c))^*")
    expected = (
        AlgebraElement.s(g, "a", "b") * AlgebraElement.s(g, "c").adjoint()
    ).scale(QQi("1/2", 3)) - (AlgebraElement.p(g, "u") + AlgebraElement.s(g, "c")).adjoint().scale(2)
    assert equals(x, expected)
    assert equals(parse(g, "0"), AlgebraElement.zero(g))
    assert equals(parse(g, "-s(a)"), AlgebraElement.s(g, "a").scale(-1))
    assert equals(parse(g, "3i*p(w)"), AlgebraElement.p(g, "w").scale(QQi(0, 3)))


@pytest.mark.parametrize(
    "text, offset",
    [
        ("s(e1", 4),
        ("s(e1) +", 7),
        ("p(v))", 4),
        ("2 s(e1)", 2),
        ("s(e1) $ s(e2)", 6),
    ],
)
def test_syntax_errors(cantor, text, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(cantor, text)
    assert info.value.offset == offset


def test_unknown_ids_and_mismatch(two_cycle):
    with pytest.raises(GraphError):
        parse(two_cycle, "s(zz)")
    with pytest.raises(GraphError):
        parse(two_cycle, "p(a)")
    with pytest.raises(CompositionError):
        parse(two_cycle, "s(a,c)")


def test_printer_canonical(cantor):
    x = parse(cantor, "s(e2)*s(e2)^* + s(e1)*s(e1)^*")
    assert to_string(x) == "s(e1)*s(e1)^* + s(e2)*s(e2)^*"
    assert to_string(AlgebraElement.zero(cantor)) == "0"
    assert to_string(parse(cantor, "-2*s(e1) + 0+1i*p(v) - 1/2-1i*s(e2)^*")) == "-1/2-1i*s(e2)^* + 0+1i*p(v) - 2*s(e1)"


def test_scalar_roundtrip():
    for c in [QQi(0), QQi(3), QQi("-1/2"), QQi(0, 1), QQi("2/3", "-5/7")]:
        assert parse_scalar(format_scalar(c)) == c


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_roundtrip(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    x = random_element(g, rng, 5, 3)
    text = to_string(x)
    y = parse(g, text)
    assert y.terms == x.terms
    assert to_string(y) == text
