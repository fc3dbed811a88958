"""Hand-written proof scripts for the bundled examples.

Every function returns a :class:`ProofScript`; ``scripts/make_proofs.py``
serialises them to ``data/proofs/*.json``.  Names of free variables follow
the translation (``N1, N2`` integer, ``X, Y`` generic), so that lines can be
matched against the translated programs.
"""
from __future__ import annotations

from .builder import ProofBuilder
from .kernel import ProofScript


def fig2() -> ProofScript:
    """(p -> q | not q) -> (p & not not q -> q), intuitionistically."""
    b = ProofBuilder()
    l1 = b.assume("p -> q | not q")
    l2 = b.assume("p & not not q")
    l3 = b.and_el(l2)
    l4 = b.and_er(l2)
    l5 = b.imp_e(l3, l1)
    l6 = b.assume("q")
    l7 = b.assume("not q")
    l8 = b.imp_e(l7, l4)
    l9 = b.contra(l8, "q")
    l10 = b.or_e(l5, l6, l9)
    l11 = b.imp_i(l10, "p & not not q")
    b.imp_i(l11, "p -> q | not q")
    return b.script()


_EX1_L = "forall int N1 (p(N1 + 1) -> q(N1) | not q(N1))"
_EX1_R = "forall int N1 (p(N1 + 1) & not not q(N1) -> q(N1))"


def ex1_left_to_right() -> ProofScript:
    b = ProofBuilder({"N1": "int"})
    a = b.assume(_EX1_L)
    inst = b.forall_e(a, "N1")
    h = b.assume("p(N1 + 1) & not not q(N1)")
    em = b.imp_e(b.and_el(h), inst)
    nn = b.and_er(h)
    yes = b.assume("q(N1)")
    bot = b.imp_e(b.assume("not q(N1)"), nn)
    no = b.contra(bot, "q(N1)")
    q = b.or_e(em, yes, no)
    b.forall_i(b.imp_i(q, "p(N1 + 1) & not not q(N1)"), "N1")
    return b.script()


def ex1_right_to_left() -> ProofScript:
    """Case split on the Hosoi instance q | (q -> not q) | not not q."""
    b = ProofBuilder({"N1": "int"})
    a = b.assume(_EX1_R)
    inst = b.forall_e(a, "N1")
    hosoi = b.axiom("hosoi", "q(N1) | (q(N1) -> not q(N1)) | not not q(N1)")
    body = b.assume("p(N1 + 1)")
    em = "q(N1) | not q(N1)"
    # case q
    yes = b.assume("q(N1)")
    c1 = b.or_il(yes, "not q(N1)")
    # case q -> not q: then not q
    qq = b.assume("q(N1) -> not q(N1)")
    bot = b.imp_e(yes, b.imp_e(yes, qq))
    c2 = b.or_ir(b.imp_i(bot, "q(N1)"), "q(N1)")
    # case not not q: the rule fires
    nn = b.assume("not not q(N1)")
    c3 = b.or_il(b.imp_e(b.and_i(body, nn), inst), "not q(N1)")
    rest = b.assume("(q(N1) -> not q(N1)) | not not q(N1)")
    inner = b.or_e(rest, c2, c3)
    out = b.or_e(hosoi, c1, inner)
    assert str(b.concl(out)) == em
    b.forall_i(b.imp_i(out, "p(N1 + 1)"), "N1")
    return b.script()


_EX2_FIRST = "forall X (p(X) -> q(X))"
_EX2_SECOND = "forall int N1 (p(N1 + 1) -> q(N1 + 1))"


def ex2_to_first() -> ProofScript:
    b = ProofBuilder()
    b.assume(_EX2_FIRST)
    return b.script()


def ex2_first_to_program() -> ProofScript:
    """The second rule is an instance of the first: forall-elimination then forall-introduction."""
    b = ProofBuilder({"N1": "int"})
    a = b.assume(_EX2_FIRST)
    b.forall_i(b.forall_e(a, "N1 + 1"), "N1")
    return b.script(goal_last=False)


def ex2_shift() -> ProofScript:
    """forall N (p(N) -> q(N)) from the second rule, substituting N - 1 for N."""
    b = ProofBuilder({"N1": "int"})
    a = b.assume(_EX2_SECOND)
    inst = b.forall_e(a, "N1 - 1")
    fact = b.forall_e(b.axiom("groupD", "forall int N1 (N1 - 1 + 1 = N1)"), "N1")
    b.forall_i(b.eq(fact, inst, "int K", "p(K) -> q(K)"), "N1")
    return b.script()


_Q = "q(X, Y) | not q(X, Y)"
_EX3_A1 = f"forall X, Y (p(X, Y) & X < Y -> {_Q})"
_EX3_A2 = "forall X (p(X, X) -> q(X, X) | not q(X, X))"
_EX3_B = f"forall X, Y (p(X, Y) & X <= Y -> {_Q})"
_LE_SPLIT = "forall X, Y (X <= Y <-> X < Y | X = Y)"


def ex3_left_to_right() -> ProofScript:
    b = ProofBuilder({"X": "generic", "Y": "generic"})
    a1 = b.forall_e(b.forall_e(b.assume(_EX3_A1), "X"), "Y")
    a2 = b.forall_e(b.assume(_EX3_A2), "X")
    split = b.and_el(b.forall_e(b.forall_e(b.axiom("groupB", _LE_SPLIT), "X"), "Y"))
    h = b.assume("p(X, Y) & X <= Y")
    pxy = b.and_el(h)
    cases = b.imp_e(b.and_er(h), split)
    lt = b.imp_e(b.and_i(pxy, b.assume("X < Y")), a1)
    eq = b.assume("X = Y")
    pxx = b.eq(eq, pxy, "Z", "p(X, Z)", backward=True)
    same = b.eq(eq, b.imp_e(pxx, a2), "Z", "q(X, Z) | not q(X, Z)")
    done = b.or_e(cases, lt, same)
    b.forall_i(b.forall_i(b.imp_i(done, "p(X, Y) & X <= Y"), "Y"), "X")
    return b.script()


def ex3_right_to_left() -> ProofScript:
    b = ProofBuilder({"X": "generic", "Y": "generic"})
    rb = b.assume(_EX3_B)
    inst = b.forall_e(b.forall_e(rb, "X"), "Y")
    join = b.and_er(b.forall_e(b.forall_e(b.axiom("groupB", _LE_SPLIT), "X"), "Y"))
    h = b.assume("p(X, Y) & X < Y")
    le = b.imp_e(b.or_il(b.and_er(h), "X = Y"), join)
    q = b.imp_e(b.and_i(b.and_el(h), le), inst)
    b.forall_i(b.forall_i(b.imp_i(q, "p(X, Y) & X < Y"), "Y"), "X")
    # the diagonal rule, using reflexivity of <=
    diag = b.forall_e(b.forall_e(rb, "X"), "X")
    refl = b.forall_e(b.axiom("groupB", "forall X (X <= X)"), "X")
    q2 = b.imp_e(b.and_i(b.assume("p(X, X)"), refl), diag)
    b.forall_i(b.imp_i(q2, "p(X, X)"), "X")
    return b.script(goal_last=False)


_EX4_L = "forall int N1, int N2 (p(N1) & p(N2) & N1 <= N2 -> q(N1 + N2))"
_EX4_R = "forall int N1, int N2 (p(N1) & p(N2) -> q(N1 + N2))"


def ex4_left_to_right() -> ProofScript:
    """Split on totality of <= and swap the summands by commutativity."""
    b = ProofBuilder({"N1": "int", "N2": "int"})
    a = b.assume(_EX4_L)
    fwd = b.forall_e(b.forall_e(a, "N1"), "N2")
    # rename bound variables first so that N2, N1 can be substituted without capture
    ren = b.assume_as(_EX4_L, "forall int K1, int K2 (p(K1) & p(K2) & K1 <= K2 -> q(K1 + K2))")
    rev = b.forall_e(b.forall_e(ren, "N2"), "N1")
    tot = b.forall_e(b.forall_e(b.axiom("groupD", "forall int N1, int N2 (N1 <= N2 | N2 <= N1)"), "N1"), "N2")
    comm = b.forall_e(b.forall_e(b.axiom("groupD", "forall int N1, int N2 (N2 + N1 = N1 + N2)"), "N1"), "N2")
    h = b.assume("p(N1) & p(N2)")
    p1, p2 = b.and_el(h), b.and_er(h)
    c1 = b.imp_e(b.and_i(p1, b.and_i(p2, b.assume("N1 <= N2"))), fwd)
    swapped = b.imp_e(b.and_i(p2, b.and_i(p1, b.assume("N2 <= N1"))), rev)
    c2 = b.eq(comm, swapped, "int K", "q(K)")
    done = b.or_e(tot, c1, c2)
    b.forall_i(b.forall_i(b.imp_i(done, "p(N1) & p(N2)"), "N2"), "N1")
    return b.script()


def ex4_right_to_left() -> ProofScript:
    b = ProofBuilder({"N1": "int", "N2": "int"})
    inst = b.forall_e(b.forall_e(b.assume(_EX4_R), "N1"), "N2")
    h = b.assume("p(N1) & p(N2) & N1 <= N2")
    rest = b.and_er(h)
    q = b.imp_e(b.and_i(b.and_el(h), b.and_el(rest)), inst)
    b.forall_i(b.forall_i(b.imp_i(q, "p(N1) & p(N2) & N1 <= N2"), "N2"), "N1")
    return b.script()


_PI1 = ("p(0)", "forall int N1 (p(N1) -> p(N1 + 1))")


def pi2_to_pi1() -> ProofScript:
    b = ProofBuilder()
    for f in _PI1:
        b.assume(f)
    return b.script(goal_last=False)


def pi1_to_pi2_partial() -> ProofScript:
    """Restates the common rules; nothing derives forall N (N + 1 > 0 -> p(N))."""
    return pi2_to_pi1()


SCRIPTS = {
    "fig2": fig2,
    "ex1_left_to_right": ex1_left_to_right,
    "ex1_right_to_left": ex1_right_to_left,
    "ex2_to_first": ex2_to_first,
    "ex2_first_to_program": ex2_first_to_program,
    "ex2_shift": ex2_shift,
    "ex3_left_to_right": ex3_left_to_right,
    "ex3_right_to_left": ex3_right_to_left,
    "ex4_left_to_right": ex4_left_to_right,
    "ex4_right_to_left": ex4_right_to_left,
    "pi2_to_pi1": pi2_to_pi1,
    "pi1_to_pi2_partial": pi1_to_pi2_partial,
}
