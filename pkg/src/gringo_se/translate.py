"""Translation of regular rules into closed two-sorted sentences.

Variables that occur under an arithmetic operation, or in a comparison with
an interval, are replaced by fresh integer variables ``N1, N2, ...``; the
remaining program variables become generic variables.  The rule
``Head :- Body`` becomes the universal closure of ``Body' -> Head'``.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import syntax as S
from .formulas import (
    BOT, GENERIC, INTEGER, Arith, Cmp, Formula, FOTerm, Imp, Not, Obj, Or, Pred, Var,
    conj, free_vars, term_vars, universal_closure,
)


class TranslationError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


@dataclass(frozen=True)
class IntVarPlan:
    rule: S.Rule
    promoted: tuple    # pairs (program Variable, integer Var)

    def partner(self, v: S.Variable) -> Var | None:
        for x, n in self.promoted:
            if x == v:
                return n
        return None


def _is_interval_comparison(b) -> bool:
    return isinstance(b, S.Comparison) and any(
        S.term_kind(t).kind is S.Kind.SECOND for t in (b.left, b.right))


def _promotable(rule: S.Rule) -> list[S.Variable]:
    out = []

    def add(v):
        if v not in out:
            out.append(v)

    def under_ops(t, inside=False):
        if isinstance(t, S.Variable) and inside:
            add(t)
        elif isinstance(t, S.BinOp):
            under_ops(t.left, True)
            under_ops(t.right, True)

    # walk the rule left to right so the order is that of first qualifying occurrence
    for _, t in _walk(rule):
        if isinstance(t, tuple):
            for v in S.term_variables(t[0]):
                add(v)
        else:
            under_ops(t)
    return out


def _walk(rule):
    """Yield (label, term) in textual order; interval-comparison sides come wrapped in a 1-tuple."""
    if rule.head is not None:
        for t in rule.head.args:
            yield "head", t
    for b in rule.body:
        if isinstance(b, S.Literal):
            for t in b.atom.args:
                yield "literal", t
        elif _is_interval_comparison(b):
            yield "cmp", (b.left,)
            yield "cmp", (b.right,)
        else:
            yield "cmp", b.left
            yield "cmp", b.right


def plan_integer_vars(rule: S.Rule) -> IntVarPlan:
    problems = [v for v in S.check_regular_rule(rule) if v.code != "unsupported-head"]
    if problems:
        raise TranslationError(problems)
    taken = {v.name for v in S.rule_variables(rule)}
    pairs, k = [], 1
    for x in _promotable(rule):
        while f"N{k}" in taken:
            k += 1
        pairs.append((x, Var(f"N{k}", INTEGER)))
        k += 1
    return IntVarPlan(rule, tuple(pairs))


def p2f(t: S.Term, plan: IntVarPlan) -> FOTerm:
    """Program term of the first kind to a term over the two-sorted signature."""
    if isinstance(t, S.Variable):
        n = plan.partner(t)
        return n if n is not None else Var(t.name, GENERIC)
    if S.is_precomputed(t):
        return Obj(t)
    if isinstance(t, S.BinOp) and t.op in ("+", "-", "*"):
        left, right = p2f(t.left, plan), p2f(t.right, plan)
        for side in (left, right):
            if isinstance(side, Var) and side.sort is GENERIC:
                raise TranslationError([f"variable {side} under {t.op!r} was not promoted"])
        try:
            return Arith(t.op, left, right)
        except TypeError as e:
            raise TranslationError([f"{t}: {e}"]) from None
    raise TranslationError([f"{t} is not a term of the first kind"])


def _atom(a: S.Atom, plan: IntVarPlan) -> Pred:
    return Pred(a.predicate, tuple(p2f(t, plan) for t in a.args))


def _body_element(b, plan: IntVarPlan) -> Formula:
    if isinstance(b, S.Literal):
        f = _atom(b.atom, plan)
        for _ in range(b.negations):
            f = Not(f)
        return f
    if _is_interval_comparison(b):
        # regularity guarantees the shape T = A..B
        lo, hi = p2f(b.right.left, plan), p2f(b.right.right, plan)
        mid = p2f(b.left, plan)
        return conj([Cmp(lo, "<=", mid), Cmp(mid, "<=", hi)])
    return Cmp(p2f(b.left, plan), b.rel, p2f(b.right, plan))


def nu_rule(rule: S.Rule) -> Formula:
    problems = S.check_regular_rule(rule)
    if problems:
        raise TranslationError(problems)
    plan = plan_integer_vars(rule)
    if rule.head is None:
        head = BOT
    else:
        head = _atom(rule.head, plan)
        if rule.choice:
            head = Or(head, Not(head))
    body = conj(_body_element(b, plan) for b in rule.body)
    f = universal_closure(head if body is None else Imp(body, head))
    assert not free_vars(f)
    return f


def nu_program(program: S.Program) -> list[Formula]:
    out, problems = [], []
    for i, rule in enumerate(program):
        try:
            out.append(nu_rule(rule))
        except TranslationError as e:
            problems.extend(f"rule {i + 1} ({rule}): {p}" for p in e.problems)
    if problems:
        raise TranslationError(problems)
    return out


def generic_under_arith(f: Formula) -> bool:
    """True if some generic variable sits inside an arithmetic term (never for our output)."""
    def in_term(t):
        return isinstance(t, Arith) and any(v.sort is GENERIC for v in term_vars(t))

    if isinstance(f, Pred):
        return any(in_term(t) for t in f.args)
    if isinstance(f, Cmp):
        return in_term(f.left) or in_term(f.right)
    if hasattr(f, "body"):
        return generic_under_arith(f.body)
    if hasattr(f, "left"):
        return generic_under_arith(f.left) or generic_under_arith(f.right)
    return False
