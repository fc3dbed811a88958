"""Forward construction of proof scripts.

Each method appends one line, computes its sequent from the premises, and
returns the new line id, so a proof reads like a handwritten
derivation.  The builder does not validate anything; the kernel does.
"""
from __future__ import annotations

from .formulas import (
    And, Forall, Formula, FOTerm, GENERIC, INTEGER, Imp, Or, Sort, Var, parse_fo_term, parse_formula,
    substitute,
)
from .kernel import ProofLine, ProofScript, Sequent, _key


class ProofBuilder:
    def __init__(self, declarations: dict | None = None):
        self.decls = {n: (s if isinstance(s, Sort) else (INTEGER if s in ("int", "integer") else GENERIC))
                      for n, s in (declarations or {}).items()}
        self.lines: list[ProofLine] = []
        self._by_id: dict[str, Sequent] = {}

    # -- parsing helpers
    def f(self, x, extra: dict | None = None) -> Formula:
        if isinstance(x, str):
            return parse_formula(x, {**self.decls, **(extra or {})}, strict=True)
        return x

    def t(self, x) -> FOTerm:
        return parse_fo_term(x, self.decls, strict=True) if isinstance(x, str) else x

    def seq(self, i: str) -> Sequent:
        return self._by_id[i]

    def concl(self, i: str) -> Formula:
        return self._by_id[i].conclusion

    def _add(self, assumptions, conclusion, rule, premises=(), hints=None) -> str:
        lid = str(len(self.lines) + 1)
        s = Sequent(tuple(assumptions), conclusion)
        self.lines.append(ProofLine(lid, s, rule, tuple(premises), dict(hints or {})))
        self._by_id[lid] = s
        return lid

    def _union(self, *ids, drop=()):
        drop = {_key(d) for d in drop}
        out = []
        for i in ids:
            out.extend(a for a in self.seq(i).assumptions if _key(a) not in drop)
        return out

    # -- axioms
    def assume(self, x) -> str:
        g = self.f(x)
        return self._add([g], g, "id")

    def assume_as(self, x, variant) -> str:
        """F => F' where F' is an alpha-variant of F, used to rename bound variables."""
        return self._add([self.f(x)], self.f(variant), "id")

    def axiom(self, kind: str, x) -> str:
        return self._add([], self.f(x), kind)

    # -- propositional rules
    def and_i(self, a, b):
        return self._add(self._union(a, b), And(self.concl(a), self.concl(b)), "andI", (a, b))

    def and_el(self, a):
        return self._add(self._union(a), self.concl(a).left, "andE-left", (a,))

    def and_er(self, a):
        return self._add(self._union(a), self.concl(a).right, "andE-right", (a,))

    def or_il(self, a, right):
        return self._add(self._union(a), Or(self.concl(a), self.f(right)), "orI-left", (a,))

    def or_ir(self, a, left):
        return self._add(self._union(a), Or(self.f(left), self.concl(a)), "orI-right", (a,))

    def or_e(self, a, b, c):
        d = self.concl(a)
        return self._add(self._union(a) + self._union(b, drop=[d.left]) + self._union(c, drop=[d.right]),
                         self.concl(b), "orE", (a, b, c))

    def imp_i(self, a, hyp):
        h = self.f(hyp)
        return self._add(self._union(a, drop=[h]), Imp(h, self.concl(a)), "impI", (a,))

    def imp_e(self, a, b):
        return self._add(self._union(a, b), self.concl(b).right, "impE", (a, b))

    def contra(self, a, goal):
        return self._add(self._union(a), self.f(goal), "C", (a,))

    def weaken(self, a, *extra):
        return self._add(self._union(a) + [self.f(x) for x in extra], self.concl(a), "W", (a,))

    # -- quantifiers and equality
    def var(self, v) -> Var:
        return Var(v, self.decls[v]) if isinstance(v, str) else v

    def forall_i(self, a, var):
        var = self.var(var)
        return self._add(self._union(a), Forall(var, self.concl(a)), "forallI", (a,))

    def forall_e(self, a, term):
        q, t = self.concl(a), self.t(term)
        return self._add(self._union(a), substitute(q.body, q.var, t), "forallE", (a,), {"term": t})

    def exists_i(self, a, target, term):
        return self._add(self._union(a), self.f(target), "existsI", (a,), {"term": self.t(term)})

    def exists_e(self, a, b):
        q = self.concl(a)
        return self._add(self._union(a) + self._union(b, drop=[q.body]), self.concl(b), "existsE", (a, b))

    def eq(self, a, b, var, template, backward: bool = False):
        """Eq rule on premise ``a`` (t1 = t2) and ``b`` (the template at t1, or at t2 if backward)."""
        if isinstance(var, str):
            var = Var(var[4:], INTEGER) if var.startswith("int ") else Var(var, GENERIC)
        e = self.concl(a)
        tmpl = self.f(template, {var.name: var.sort})
        dst = e.left if backward else e.right
        return self._add(self._union(a, b), substitute(tmpl, var, dst),
                         "Eq-backward" if backward else "Eq-forward", (a, b), {"var": var, "template": tmpl})

    def script(self, goal: Sequent | None = None, goal_last: bool = True) -> ProofScript:
        if goal is None and goal_last and self.lines:
            goal = self.lines[-1].sequent
        return ProofScript(dict(self.decls), list(self.lines), goal)
