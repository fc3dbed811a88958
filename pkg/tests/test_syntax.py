import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gringo_se import syntax as S
from gringo_se.corpus import load_program, program_names


def test_choice_rule():
    (r,) = S.parse_program("{q(X)} :- p(X+1).")
    assert r.choice and r.head == S.Atom("q", (S.Variable("X"),))
    (lit,) = r.body
    assert lit.negations == 0
    assert lit.atom.args == (S.BinOp("+", S.Variable("X"), S.Numeral(1)),)


def test_basic_rule_with_intervals():
    (r,) = S.parse_program("p(X,Y) :- X = 1..2, Y = 1..2.")
    assert not r.choice
    assert all(isinstance(b, S.Comparison) and b.rel == "=" for b in r.body)
    assert r.body[0].right == S.BinOp("..", S.Numeral(1), S.Numeral(2))


def test_empty_program():
    assert len(S.parse_program("")) == 0
    assert len(S.parse_program("% only a comment\n")) == 0


def test_constraint_and_negations():
    (r,) = S.parse_program(":- p(X), not not q(X), X != a.")
    assert r.head is None
    assert [type(b).__name__ for b in r.body] == ["Literal", "Literal", "Comparison"]
    assert r.body[1].negations == 2


def test_program_is_a_set():
    a = S.parse_program("p. q. p.")
    b = S.parse_program("q. p.")
    assert len(a) == 2 and a == b


@pytest.mark.parametrize("text", ["p(X :- q.", "p(1..2..3).", "p :- X.", "p :- q r.", "p(X)"])
def test_parse_errors_carry_position(text):
    with pytest.raises(S.ParseError) as e:
        S.parse_program(text)
    assert e.value.line >= 1 and e.value.column >= 1


def test_precedence():
    t = S.parse_program_term("1+2*3..4")
    assert t == S.BinOp("..", S.BinOp("+", S.Numeral(1), S.BinOp("*", S.Numeral(2), S.Numeral(3))), S.Numeral(4))
    assert str(S.parse_program_term("((1..3)*(4..6))+(7..9)")) == "(1..3)*(4..6)+(7..9)"


@pytest.mark.parametrize("text,kind", [
    ("X+1", S.Kind.FIRST),
    ("(1..3)..4", S.Kind.IRREGULAR),
    ("a+1", S.Kind.IRREGULAR),
    ("1..X", S.Kind.SECOND),
    ("X/2", S.Kind.IRREGULAR),
    ("#inf", S.Kind.FIRST),
])
def test_term_kind(text, kind):
    assert S.term_kind(S.parse_program_term(text)).kind is kind


def test_nested_interval_reason():
    assert "interval" in S.term_kind(S.parse_program_term("(1..3)..4")).reason


def test_regularity():
    assert S.check_regular_rule(S.parse_rule("p(X,Y) :- X = 1..2, Y = 1..2.")) == []
    (v,) = S.check_regular_rule(S.parse_rule("q :- p(1..2)."))
    assert v.code == "interval-in-literal"
    codes = {v.code for v in S.check_regular_rule(S.parse_rule("p(1..X) :- q(X)."))}
    assert codes == {"unsupported-head"}
    assert {v.code for v in S.check_regular_rule(S.parse_rule("p :- X < 1..2."))} == {"interval-comparison"}


def test_bundled_rules_are_regular():
    for name in program_names():
        for r in load_program(name):
            assert S.is_regular(r), (name, r)


def test_precomputed_order_examples():
    assert S.precomputed_compare(S.Symbol("ab"), S.Symbol("ac")) == -1
    assert S.precomputed_compare(S.Inf(), S.Numeral(0)) == -1
    assert S.precomputed_compare(S.Numeral(5), S.Numeral(5)) == 0
    assert S.precomputed_compare(S.Sup(), S.Symbol("zz")) == 1
    assert S.precomputed_compare(S.Numeral(10**6), S.Symbol("a")) == -1
    with pytest.raises(ValueError):
        S.precomputed_compare(S.Variable("X"), S.Numeral(0))


_sample = [S.Inf(), S.Sup()] + [S.Numeral(n) for n in range(-4, 5)] + [S.Symbol(s) for s in ("a", "ab", "ac", "b", "zeta")]


def test_trichotomy_and_transitivity():
    pairs = list(itertools.product(_sample, repeat=2))
    assert len(pairs) >= 100
    for x, y in pairs:
        assert S.precomputed_compare(x, y) == -S.precomputed_compare(y, x)
        assert (S.precomputed_compare(x, y) == 0) == (x == y)
    for x, y, z in itertools.product(_sample, repeat=3):
        if S.precomputed_compare(x, y) < 0 and S.precomputed_compare(y, z) < 0:
            assert S.precomputed_compare(x, z) < 0


def test_roundtrip_bundled_programs():
    for name in program_names():
        p = load_program(name)
        assert S.parse_program(S.unparse(p)) == p


# random program terms for the unparse/parse property
_names = st.sampled_from(["X", "Y", "Zed"])
_leaf = st.one_of(
    st.integers(-30, 30).map(S.Numeral),
    st.sampled_from(["a", "bc"]).map(S.Symbol),
    _names.map(S.Variable),
    st.sampled_from([S.Inf(), S.Sup()]),
)
terms = st.recursive(_leaf, lambda sub: st.builds(S.BinOp, st.sampled_from(S.OPERATIONS), sub, sub), max_leaves=8)


@settings(max_examples=300)
@given(terms)
def test_term_roundtrip_and_kind_stability(t):
    text = str(t)
    back = S.parse_program_term(text)
    assert S.term_kind(back) == S.term_kind(t)
    assert str(back) == text
