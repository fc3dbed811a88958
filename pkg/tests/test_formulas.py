import pytest

from gringo_se import syntax as S
from gringo_se.formulas import (
    BOT, GENERIC, INTEGER, And, Arith, Cmp, Exists, Forall, Imp, Not, Obj, Pred, SortError,
    SubstitutionError, Var, alpha_eq, eval_comparison, eval_ground_term, free_vars, is_substitutable,
    num, parse_fo_term, parse_formula, same_sentence, show, substitute, substitute_many, universal_closure,
)

N, M = Var("N", INTEGER), Var("M", INTEGER)
X, Y = Var("X", GENERIC), Var("Y", GENERIC)
ENV = {"N": INTEGER, "M": INTEGER}


def f(text):
    return parse_formula(text, ENV)


def test_free_vars():
    assert free_vars(f("forall int N (p(N) -> p(N + 1))")) == frozenset()
    assert free_vars(f("p(X) & exists X (q(X))")) == {X}
    assert free_vars(f("X = N")) == {X, N}


def test_substitutability():
    assert not is_substitutable(f("exists Y (p(X, Y))"), X, Y)
    assert not is_substitutable(f("p(N)"), N, X)
    assert is_substitutable(f("p(N)"), N, Arith("-", N, num(1)))
    with pytest.raises(SubstitutionError):
        substitute(f("p(N)"), N, X)


def test_substitute():
    assert substitute(f("p(N) -> p(N + 1)"), N, num(0)) == f("p(0) -> p(0 + 1)")
    g = f("forall int N (p(N))")
    assert substitute(g, N, num(5)) == g


def test_simultaneous_swap():
    g = f("p(M) & p(N) -> q(M + N)")
    assert substitute_many(g, {M: N, N: M}) == f("p(N) & p(M) -> q(N + M)")


def test_sorts_enforced():
    with pytest.raises(SortError):
        Arith("+", X, num(1))
    with pytest.raises(SortError):
        Arith("+", Obj(S.Symbol("a")), num(1))


def test_universal_closure():
    assert universal_closure(f("p(X) -> q(X)")) == f("forall X (p(X) -> q(X))")
    closed = f("forall X (p(X))")
    assert universal_closure(closed) is closed
    c = universal_closure(f("X = N & 1 <= N <= 2 -> p(X, N)"))
    assert same_sentence(c, f("forall X, int N (X = N & 1 <= N & N <= 2 -> p(X, N))"))


def test_eval_ground_term():
    assert eval_ground_term(parse_fo_term("2 * 2")) == S.Numeral(4)
    assert eval_ground_term(num(0)) == S.Numeral(0)
    assert eval_ground_term(parse_fo_term("(3 - 5) * 2")) == S.Numeral(-4)
    assert eval_ground_term(parse_fo_term("99999999999 * 99999999999")) == S.Numeral(99999999999 ** 2)


def test_eval_comparison():
    assert eval_comparison(S.Symbol("ab"), "<", S.Symbol("ac"))
    assert eval_comparison(S.Inf(), "<=", S.Sup())
    assert not eval_comparison(S.Numeral(7), "!=", S.Numeral(7))


def test_alpha_and_prefix():
    a = f("forall int N, int M (p(N) -> q(M))")
    b = f("forall int K, int L (p(K) -> q(L))")
    c = f("forall int M, int N (p(N) -> q(M))")
    assert alpha_eq(a, b)
    assert not alpha_eq(a, c) and same_sentence(a, c)
    assert not same_sentence(f("forall X (p(X))"), f("forall int N (p(N))"))


def test_show_parse_roundtrip():
    for text in ["forall int N1 (p(N1 + 1) -> q(N1) | not q(N1))", "#false", "p & q | r -> s",
                 "exists X (p(X) & not X = a)", "(p -> q) -> r", "p(#inf, #sup, -3)"]:
        g = parse_formula(text)
        assert parse_formula(show(g)) == g


def test_chain_expands_left_to_right():
    assert f("1 <= N <= 2") == And(Cmp(num(1), "<=", N), Cmp(N, "<=", num(2)))


def test_negation_is_implication_to_bottom():
    assert f("not p") == Imp(Pred("p", ()), BOT) == Not(Pred("p", ()))


def test_quantifier_body_needs_parentheses():
    with pytest.raises(S.ParseError):
        f("forall X p(X)")


def test_strict_mode_rejects_undeclared():
    with pytest.raises(S.ParseError):
        parse_formula("p(Z)", strict=True)
    assert parse_formula("forall Z (p(Z))", strict=True) == Forall(Var("Z", GENERIC), Pred("p", (Var("Z", GENERIC),)))


def test_exists_binds():
    assert isinstance(f("exists int N (p(N))"), Exists)
