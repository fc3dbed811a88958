"""Randomized invariants; every property draws at least 1000 derandomized examples."""
from hypothesis import assume, given, settings, strategies as st

from _gen import (
    GEN_VARS, INT_VARS, PROP_ATOMS, any_terms, depth, fo_formulas, ground_formulas,
    ground_int_terms, ht_interpretations, int_terms, ht_valid, negative_formulas, reference_eval, resimplify,
)
from gringo_se import syntax as S
from gringo_se.formulas import (
    INTEGER, Arith, eval_ground_term, free_vars, is_substitutable,
    substitute, term_sort, term_vars, universal_closure,
)
from gringo_se.ground import (
    Domain, GAtom, HTInterpretation, gneg, ground, ht_tables, is_negative, is_tautological, mk_imp, mk_or,
    sat_classical, sat_ht,
)
from gringo_se.kernel import GROUP_B, GROUP_D, is_group_b_axiom, is_group_d_axiom

MANY = settings(max_examples=1000)


@MANY
@given(ground_formulas(), ht_interpretations())
def test_persistence(g, h):
    if sat_ht(h, g):
        assert sat_classical(h.J, g)


@MANY
@given(ground_formulas(), ht_interpretations())
def test_total_collapse(g, h):
    total = HTInterpretation(h.J, h.J)
    assert sat_ht(total, g) == sat_classical(h.J, g)


@MANY
@given(ground_formulas(), ht_interpretations())
def test_simplification_preserves_satisfaction(g, h):
    s = resimplify(g)
    assert sat_ht(h, s) == sat_ht(h, g)
    assert sat_classical(h.J, s) == sat_classical(h.J, g)


@MANY
@given(fo_formulas(), st.sampled_from(INT_VARS + GEN_VARS), any_terms())
def test_substitution_free_variables(f, v, t):
    if v not in free_vars(f):
        if is_substitutable(f, v, t):
            assert substitute(f, v, t) == f
        return
    assume(is_substitutable(f, v, t))
    out = substitute(f, v, t)
    assert free_vars(out) == (free_vars(f) - {v}) | set(term_vars(t))


def _sorts_ok(f):
    """No arithmetic node has a generic child (constructor asserts, checked again here)."""
    def term_ok(t):
        if isinstance(t, Arith):
            return term_sort(t.left) is INTEGER and term_sort(t.right) is INTEGER and term_ok(t.left) and term_ok(t.right)
        return True
    if hasattr(f, "args"):
        return all(term_ok(t) for t in f.args)
    if hasattr(f, "rel"):
        return term_ok(f.left) and term_ok(f.right)
    if hasattr(f, "body"):
        return _sorts_ok(f.body)
    if hasattr(f, "left"):
        return _sorts_ok(f.left) and _sorts_ok(f.right)
    return True


@MANY
@given(fo_formulas(), st.one_of(st.tuples(st.sampled_from(INT_VARS), int_terms(3)),
                                st.tuples(st.sampled_from(GEN_VARS), any_terms())))
def test_substitution_respects_sorts(f, vt):
    v, t = vt
    assume(is_substitutable(f, v, t))
    assert _sorts_ok(substitute(f, v, t))


@MANY
@given(ground_int_terms())
def test_evaluation_matches_reference(t):
    assume(depth(t) <= 6)
    assert eval_ground_term(t) == S.Numeral(reference_eval(t))


# ground instances of the axiom groups

_POOL = [S.Inf(), S.Sup()] + [S.Numeral(n) for n in range(-3, 4)] + [S.Symbol(c) for c in ("a", "ab", "b")]


@MANY
@given(st.sampled_from(GROUP_B), st.lists(st.sampled_from(_POOL), min_size=3, max_size=3),
       st.integers(-3, 0), st.integers(0, 3))
def test_group_b_instances_are_ht_valid(schema, consts, lo, hi):
    from gringo_se.formulas import Obj
    vs = sorted(free_vars(schema), key=lambda v: v.name)
    inst = schema
    for v, c in zip(vs, consts):
        inst = substitute(inst, v, Obj(c))
    assert is_group_b_axiom(inst)
    d = Domain(("a", "ab", "b"), min(lo, -3), max(hi, 3), include_inf_sup=True)
    assert ht_valid(ground(inst, d))
    closure = universal_closure(schema)
    assert ht_valid(ground(closure, Domain(("a",), lo, hi, include_inf_sup=True)))


@MANY
@given(st.sampled_from(GROUP_D), st.lists(st.integers(-50, 50), min_size=3, max_size=3), st.integers(-2, 0), st.integers(0, 2))
def test_group_d_instances_are_ht_valid(schema, values, lo, hi):
    from gringo_se.formulas import num
    vs = sorted(free_vars(schema), key=lambda v: v.name)
    inst = schema
    for v, n in zip(vs, values):
        inst = substitute(inst, v, num(n))
    assert is_group_d_axiom(inst) == "yes"
    assert ht_valid(ground(inst, Domain((), -10**6, 10**6)))
    # closures range over a small integer window holding the catalog constants 0 and 1
    assert ht_valid(ground(universal_closure(schema), Domain((), min(lo, 0), max(hi, 1))))


@MANY
@given(st.sampled_from(_POOL), st.sampled_from(["=", "!=", "<", ">", "<=", ">="]), st.sampled_from(_POOL))
def test_group_c_instances_are_ht_valid(c1, rel, c2):
    from gringo_se.formulas import Cmp, Not, Obj
    from gringo_se.kernel import is_group_c_axiom
    lit = Cmp(Obj(c1), rel, Obj(c2))
    f = lit if is_group_c_axiom(lit) else Not(lit)
    assert is_group_c_axiom(f)
    assert ht_valid(ground(f, Domain(("a", "ab", "b"), -3, 3, include_inf_sup=True)))


@MANY
@given(ground_formulas(max_leaves=5), ground_formulas(max_leaves=5))
def test_group_a_instances_are_ht_valid(f, g):
    assert ht_valid(mk_or([f, mk_imp(f, g), gneg(g)]), PROP_ATOMS)


_ATOMS = {n: tuple(GAtom(f"a{i}", ()) for i in range(n)) for n in range(1, 6)}
_SUBFORMULAS = {n: ground_formulas(atoms, 4) for n, atoms in _ATOMS.items()}


@MANY
@given(st.integers(1, 5), st.data())
def test_excluded_middle_vs_hosoi(n, data):
    atoms = list(_ATOMS[n])
    p = data.draw(st.sampled_from(atoms))
    em = mk_or([p, gneg(p)])
    assert not sat_ht(HTInterpretation(frozenset(), frozenset([p])), em)
    f = data.draw(_SUBFORMULAS[n])
    g = data.draw(_SUBFORMULAS[n])
    hosoi = mk_or([f, mk_imp(f, g), gneg(g)])
    (table,) = ht_tables([hosoi], atoms, max_atoms=None)
    assert table.size == 3 ** n and table.all()


@MANY
@given(negative_formulas())
def test_negative_tautologies_are_ht_valid(g):
    assert is_negative(g)
    if is_tautological(g):
        assert ht_valid(g, PROP_ATOMS)


@MANY
@given(ground_formulas())
def test_ht_validity_implies_tautology(g):
    if ht_valid(g):
        assert is_tautological(g)
