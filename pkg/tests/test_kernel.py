import copy
import json

import pytest

from gringo_se.builder import ProofBuilder
from gringo_se.corpus import TASKS, load_program, load_proof, proof_path
from gringo_se.formulas import INTEGER, parse_formula
from gringo_se.kernel import (
    MalformedProof, Sequent, check_equivalence_task, check_proof, is_axiom_identity, is_group_b_axiom,
    is_group_c_axiom, is_group_d_axiom, is_hosoi_instance, load_script,
)
from gringo_se.proofs import SCRIPTS


def raw(name):
    return json.loads(proof_path(name).read_text())


def verdict(data, **kw):
    return check_proof(load_script(data), **kw)


# -- axiom recognizers

def seq(assumptions, concl):
    return Sequent(tuple(parse_formula(a, {"N": INTEGER}) for a in assumptions), parse_formula(concl, {"N": INTEGER}))


def test_identity_axiom():
    assert is_axiom_identity(seq(["p"], "p"))
    assert is_axiom_identity(seq(["p -> q | not q"], "p -> q | not q"))
    assert is_axiom_identity(seq([], "N + 1 = N + 1"))
    assert not is_axiom_identity(seq(["p"], "q"))
    assert not is_axiom_identity(seq([], "N + 1 = 1 + N"))


def test_hosoi():
    assert is_hosoi_instance(parse_formula("q | (q -> not q) | not not q"))
    assert not is_hosoi_instance(parse_formula("p | not p"))
    assert is_hosoi_instance(parse_formula("p(X) | (p(X) -> q) | not q"))
    assert is_hosoi_instance(parse_formula("forall X (p(X) | (p(X) -> q) | not q)"))
    assert not is_hosoi_instance(parse_formula("(p | (p -> q)) | not q"))   # left-nested


def test_group_b():
    assert is_group_b_axiom(parse_formula("forall X, Y (X < Y | not X < Y)"))
    assert is_group_b_axiom(parse_formula("forall X, Y (X <= Y <-> X < Y | X = Y)"))
    assert not is_group_b_axiom(parse_formula("forall X (X <= #inf)"))
    assert is_group_b_axiom(parse_formula("#inf <= a"))
    assert not is_group_b_axiom(parse_formula("forall X, Y (X <= Y -> Y <= X)"))


def test_group_c():
    assert is_group_c_axiom(parse_formula("ab < ac"))
    assert is_group_c_axiom(parse_formula("not #sup <= #inf"))
    assert not is_group_c_axiom(parse_formula("ac < ab"))
    assert not is_group_c_axiom(parse_formula("X < ab"))


def test_group_d():
    assert is_group_d_axiom(parse_formula("2 * 2 = 4")) == "yes"
    assert is_group_d_axiom(parse_formula("forall int M, int N (M <= N | N <= M)")) == "yes"
    assert is_group_d_axiom(parse_formula("forall int N (N * N >= 0)")) == "no"
    assert is_group_d_axiom(parse_formula("forall int N (N * N >= 0)"), trusted=True) == "yes-trusted"
    assert is_group_d_axiom(parse_formula("forall int N (N - 1 + 1 = N)")) == "yes"
    assert is_group_d_axiom(parse_formula("2 * 2 = 5")) == "no"
    with pytest.raises(ValueError):
        is_group_d_axiom(parse_formula("forall int N (p(N) | N = N)"))
    with pytest.raises(ValueError):
        is_group_d_axiom(parse_formula("N = N", {"N": INTEGER}))


# -- golden proofs

@pytest.mark.parametrize("name", sorted(SCRIPTS))
def test_bundled_proofs_accepted(name):
    v = check_proof(load_proof(name))
    assert v.accepted and not v.uses_trusted_arithmetic, str(v)


def test_bundled_files_match_builder():
    for name, make in SCRIPTS.items():
        assert raw(name) == json.loads(json.dumps(make().to_json())), name


def test_fig2_shape_and_int_mode():
    s = load_proof("fig2")
    assert len(s.lines) == 12
    assert check_proof(s, int_mode=True).accepted
    assert str(s.lines[-1].sequent) == "=> (p -> q | not q) -> p & not not q -> q"


def test_hta_proofs_need_axioms():
    for name in ("ex1_right_to_left", "ex3_left_to_right", "ex4_left_to_right", "ex2_shift"):
        v = check_proof(load_proof(name), int_mode=True)
        assert not v.accepted and "Int mode" in v.reason


@pytest.mark.parametrize("task", TASKS, ids=lambda t: t.name)
def test_equivalence_tasks(task):
    r = check_equivalence_task(load_program(task.left), load_program(task.right),
                               load_proof(task.forward), load_proof(task.backward))
    assert r.accepted == task.certified
    if task.certified:
        assert r.message == "strongly equivalent (HTA-certified)"
    else:
        assert r.forward.verdict.accepted and len(r.forward.missing) == 1


def test_task_with_swapped_scripts_fails():
    t = TASKS[0]
    r = check_equivalence_task(load_program(t.left), load_program(t.right),
                               load_proof(t.backward), load_proof(t.forward))
    assert not r.accepted


# -- mutations: each must be rejected exactly at the mutated line

def _mut(name, line_id, **changes):
    data = copy.deepcopy(raw(name))
    (ln,) = [x for x in data["lines"] if x["id"] == line_id]
    for k, v in changes.items():
        if v is None:
            ln.pop(k, None)
        else:
            ln[k] = v
    return data


MUTATIONS = {
    "and-intro instead of and-elim": ("fig2", "3", dict(rule="andI")),
    "swapped implication premises": ("fig2", "5", dict(premises=["1", "3"])),
    "wrong case premise": ("fig2", "10", dict(premises=["5", "6", "8"])),
    "unknown rule": ("fig2", "8", dict(rule="modus-ponens")),
    "weakening that changes the formula": ("fig2", "9", dict(rule="W")),
    "dangling premise": ("fig2", "11", dict(premises=["99"])),
    "discharging an absent hypothesis": ("fig2", "11", dict(formula="p -> q")),
    "eigenvariable free in assumptions": ("ex1_left_to_right", "13", dict(
        premises=["11"], formula="forall int N1 (q(N1))",
        assumptions=["forall int N1 (p(N1 + 1) -> q(N1) | not q(N1))", "p(N1 + 1) & not not q(N1)"])),
    "wrong instance term": ("ex2_shift", "2", dict(hints={"term": "N1 + 1"})),
    "missing hint": ("ex2_shift", "2", dict(hints=None)),
    "excluded middle passed off as hosoi": ("ex1_right_to_left", "3", dict(formula="q(N1) | not q(N1)")),
    "undecided arithmetic": ("ex4_left_to_right", "7", dict(formula="forall int N1 (N1 * N1 >= 0)")),
    "inf as largest element": ("ex3_right_to_left", "4", dict(formula="forall X (X <= #inf)")),
    "wrong equality template": ("ex4_left_to_right", "24", dict(hints={"var": "int K", "template": "q(K + 0)"})),
    "case split losing an assumption": ("ex3_left_to_right", "21", dict(assumptions=["p(X, Y) & X <= Y"])),
    "axiom with assumptions": ("ex3_left_to_right", "6", dict(assumptions=["p(X, Y) & X <= Y"])),
}


@pytest.mark.parametrize("label", sorted(MUTATIONS))
def test_mutation_rejected_at_line(label):
    name, line_id, changes = MUTATIONS[label]
    v = verdict(_mut(name, line_id, **changes))
    assert not v.accepted and v.failed_line == line_id, str(v)
    assert v.reason


def test_generic_for_integer_substitution():
    b = ProofBuilder({"X": "generic"})
    b.assume("forall int N1 (p(N1) -> q(N1))")
    data = b.script().to_json()
    data["lines"].append({"id": "2", "assumptions": [data["lines"][0]["formula"]], "formula": "p(X) -> q(X)",
                          "rule": "forallE", "premises": ["1"], "hints": {"term": "X"}})
    data["goal"] = None
    v = verdict(data)
    assert not v.accepted and v.failed_line == "2" and "generic term X for integer variable" in v.reason


def test_eigenvariable_violation():
    b = ProofBuilder({"X": "generic"})
    b.forall_i(b.assume("p(X)"), "X")
    v = check_proof(b.script())
    assert not v.accepted and v.failed_line == "2" and "eigenvariable" in v.reason


def test_exists_rules():
    b = ProofBuilder({"X": "generic"})
    e = b.assume("exists X (p(X))")
    px = b.assume("p(X)")
    ex = b.exists_i(px, "exists Y (p(Y))", "X")
    done = b.exists_e(e, ex)
    b.imp_i(done, "exists X (p(X))")
    assert check_proof(b.script()).accepted
    # the eigenvariable may not stay free in the conclusion
    b2 = ProofBuilder({"X": "generic"})
    b2.exists_e(b2.assume("exists X (p(X))"), b2.assume("p(X)"))
    v = check_proof(b2.script())
    assert not v.accepted and "eigenvariable" in v.reason


def test_trusted_arithmetic_flag():
    b = ProofBuilder()
    b.axiom("groupD-trusted", "forall int N (N * N >= 0)")
    s = b.script()
    assert not check_proof(s).accepted
    v = check_proof(s, trust_arith=True)
    assert v.accepted and v.uses_trusted_arithmetic
    b2 = ProofBuilder()
    b2.axiom("groupD-trusted", "2 * 2 = 4")   # decided anyway: no trust needed
    v = check_proof(b2.script(), trust_arith=True)
    assert v.accepted and not v.uses_trusted_arithmetic


def test_goal_mismatch():
    data = raw("fig2")
    data["goal"] = {"assumptions": [], "formula": "p"}
    v = verdict(data)
    assert not v.accepted and v.failed_line == "12"


def test_deleting_unused_line_keeps_verdicts():
    data = raw("ex2_shift")
    full = verdict(data)
    data2 = copy.deepcopy(data)
    data2["lines"].insert(1, {"id": "x", "assumptions": [], "formula": "1 + 1 = 2", "rule": "groupD", "premises": []})
    with_extra = verdict(data2)
    assert with_extra.accepted == full.accepted
    assert [s.ok for s in with_extra.lines if s.id != "x"] == [s.ok for s in full.lines]


@pytest.mark.parametrize("bad", [
    "not json", "[]", '{"lines": [{"id": 1}]}',
    '{"lines": [{"id": 1, "formula": "p(", "rule": "id"}]}',
    '{"lines": [{"id": 1, "formula": "p(X)", "rule": "id", "assumptions": ["p(X)"]}]}',
    '{"lines": [{"id": 1, "formula": "p", "rule": "id"}, {"id": 1, "formula": "p", "rule": "id"}]}',
    '{"declarations": [{"name": "N", "sort": "real"}], "lines": []}',
])
def test_malformed_scripts(bad):
    with pytest.raises(MalformedProof):
        load_script(bad)


def test_unicode_rule_aliases():
    data = raw("fig2")
    for ln in data["lines"]:
        ln["rule"] = {"impE": "→E", "impI": "→I", "orE": "∨E", "andE-left": "∧E-left"}.get(ln["rule"], ln["rule"])
    assert verdict(data).accepted
