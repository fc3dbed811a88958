"""Natural-deduction proof checking for here-and-there with arithmetic.

A proof script is a list of sequent lines ``Gamma => F``, each justified by
an axiom or by an inference rule applied to earlier lines.  The kernel only
checks; it never searches.  Rules whose instance is not determined by the
premises and the conclusion carry hints: ``forallE``/``existsI`` the
substituted term, the equality rules the variable and template formula.

Available justifications:

========================  =====================================================
axioms                    ``id`` (F => F), ``eq-refl`` (=> t = t), ``hosoi``,
                          ``groupB`` (order), ``groupC`` (ground comparisons),
                          ``groupD`` (arithmetic), ``groupD-trusted``
propositional rules       ``andI``, ``andE-left``, ``andE-right``, ``orI-left``,
                          ``orI-right``, ``orE``, ``impI``, ``impE``, ``C``, ``W``
quantifiers and equality  ``forallI``, ``forallE``, ``existsI``, ``existsE``,
                          ``Eq-forward``, ``Eq-backward``
========================  =====================================================

In *Int mode* the axiom groups hosoi/B/C/D are switched off.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import syntax as S
from .formulas import (
    GENERIC, INTEGER, RELATIONS, And, Arith, Bot, Cmp, Exists, Forall, Formula, FOTerm,
    Imp, Obj, Or, Pred, Sort, SubstitutionError, Var, canonical, eval_comparison, forall_prefix,
    free_vars, parse_fo_term, parse_formula, same_sentence, show, show_term,
    substitute, term_sort, term_vars,
)
from .translate import nu_program

AXIOM_KINDS = ("id", "eq-refl", "hosoi", "groupB", "groupC", "groupD", "groupD-trusted")
HTA_ONLY = ("hosoi", "groupB", "groupC", "groupD", "groupD-trusted")
RULE_NAMES = ("andI", "andE-left", "andE-right", "orI-left", "orI-right", "orE", "impI", "impE",
              "C", "W", "forallI", "forallE", "existsI", "existsE", "Eq-forward", "Eq-backward")
ALIASES = {
    "∧I": "andI", "∧E-left": "andE-left", "∧E-right": "andE-right",
    "∨I-left": "orI-left", "∨I-right": "orI-right", "∨E": "orE",
    "→I": "impI", "→E": "impE", "∀I": "forallI", "∀E": "forallE",
    "∃I": "existsI", "∃E": "existsE", "axiom": "id",
}


class MalformedProof(ValueError):
    pass


# ---------------------------------------------------------------------------
# Sequents and scripts

def _key(f: Formula):
    return canonical(f)


@dataclass(frozen=True, eq=False)
class Sequent:
    assumptions: tuple
    conclusion: Formula

    def __post_init__(self):
        seen, uniq = set(), []
        for a in self.assumptions:
            k = _key(a)
            if k not in seen:
                seen.add(k)
                uniq.append(a)
        object.__setattr__(self, "assumptions", tuple(uniq))

    @property
    def keys(self) -> frozenset:
        return frozenset(_key(a) for a in self.assumptions)

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.keys == other.keys and _key(self.conclusion) == _key(other.conclusion)

    def __hash__(self):
        return hash((self.keys, _key(self.conclusion)))

    def __str__(self):
        left = ", ".join(show(a) for a in self.assumptions)
        return f"{left} => {show(self.conclusion)}" if left else f"=> {show(self.conclusion)}"


@dataclass
class ProofLine:
    id: str
    sequent: Sequent
    rule: str
    premises: tuple = ()
    hints: dict = field(default_factory=dict)


@dataclass
class ProofScript:
    declarations: dict           # name -> Sort
    lines: list
    goal: Sequent | None = None

    def to_json(self) -> dict:
        def hints(h):
            out = {}
            if "term" in h:
                out["term"] = show_term(h["term"])
            if "var" in h:
                out["var"] = h["var"].decl()
            if "template" in h:
                out["template"] = show(h["template"])
            return out

        data = {
            "declarations": [{"name": n, "sort": s.value} for n, s in self.declarations.items()],
            "lines": [{
                "id": ln.id,
                "assumptions": [show(a) for a in ln.sequent.assumptions],
                "formula": show(ln.sequent.conclusion),
                "rule": ln.rule,
                "premises": list(ln.premises),
                **({"hints": hints(ln.hints)} if ln.hints else {}),
            } for ln in self.lines],
        }
        if self.goal is not None:
            data["goal"] = {"assumptions": [show(a) for a in self.goal.assumptions],
                            "formula": show(self.goal.conclusion)}
        return data


def _sort(text) -> Sort:
    text = str(text).lower()
    if text in ("int", "integer"):
        return INTEGER
    if text == "generic":
        return GENERIC
    raise MalformedProof(f"unknown sort {text!r}")


def load_script(source) -> ProofScript:
    """Read a proof script from a path, a JSON string, or an already decoded dict."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            source = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise MalformedProof(str(e)) from None
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as e:
            raise MalformedProof(f"invalid JSON: {e}") from None
    if not isinstance(source, dict) or not isinstance(source.get("lines"), list):
        raise MalformedProof("a proof script is an object with a 'lines' list")
    decls = {}
    for d in source.get("declarations", []):
        try:
            decls[d["name"]] = _sort(d.get("sort", "generic"))
        except (KeyError, TypeError):
            raise MalformedProof(f"bad declaration {d!r}") from None

    def formula(text, env=decls, where=""):
        try:
            return parse_formula(text, env, strict=True)
        except (S.ParseError, TypeError) as e:
            raise MalformedProof(f"{where}: cannot parse {text!r}: {e}") from None

    lines, ids = [], set()
    for raw in source["lines"]:
        if not isinstance(raw, dict) or "id" not in raw or "formula" not in raw or "rule" not in raw:
            raise MalformedProof(f"line {raw!r} needs 'id', 'formula' and 'rule'")
        lid = str(raw["id"])
        if lid in ids:
            raise MalformedProof(f"duplicate line id {lid}")
        ids.add(lid)
        where = f"line {lid}"
        seq = Sequent(tuple(formula(a, where=where) for a in raw.get("assumptions", [])),
                      formula(raw["formula"], where=where))
        hints = {}
        rh = raw.get("hints") or {}
        env = dict(decls)
        if "var" in rh:
            text = str(rh["var"]).strip()
            sort = GENERIC
            if text.startswith("int "):
                text, sort = text[4:].strip(), INTEGER
            elif "var_sort" in rh:
                sort = _sort(rh["var_sort"])
            elif text in decls:
                sort = decls[text]
            hints["var"] = Var(text, sort)
            env[text] = sort
        if "term" in rh:
            try:
                hints["term"] = parse_fo_term(rh["term"], decls, strict=True)
            except (S.ParseError, TypeError) as e:
                raise MalformedProof(f"{where}: cannot parse term {rh['term']!r}: {e}") from None
        if "template" in rh:
            hints["template"] = formula(rh["template"], env, where)
        lines.append(ProofLine(lid, seq, str(raw["rule"]),
                               tuple(str(p) for p in raw.get("premises", [])), hints))
    goal = None
    if source.get("goal") is not None:
        g = source["goal"]
        if isinstance(g, str):
            goal = Sequent((), formula(g, where="goal"))
        else:
            goal = Sequent(tuple(formula(a, where="goal") for a in g.get("assumptions", [])),
                           formula(g["formula"], where="goal"))
    return ProofScript(decls, lines, goal)


# ---------------------------------------------------------------------------
# Axiom recognizers

def is_axiom_identity(s: Sequent) -> bool:
    c = s.conclusion
    if not s.assumptions:
        return isinstance(c, Cmp) and c.rel == "=" and c.left == c.right
    return len(s.keys) == 1 and _key(c) in s.keys


def _alpha(f, g) -> bool:
    return _key(f) == _key(g)


def is_hosoi_instance(f: Formula) -> bool:
    """F | (F -> G) | not G, right-nested, possibly under a block of foralls."""
    _, body = forall_prefix(f)
    if not (isinstance(body, Or) and isinstance(body.right, Or)):
        return False
    a, mid, neg = body.left, body.right.left, body.right.right
    return (isinstance(mid, Imp) and isinstance(neg, Imp) and isinstance(neg.right, Bot)
            and _alpha(mid.left, a) and _alpha(mid.right, neg.left))


def _match_term(pat, t, binding) -> bool:
    if isinstance(pat, Var):
        if not pat.sort.accepts(term_sort(t)):
            return False
        if pat in binding:
            return binding[pat] == t
        binding[pat] = t
        return True
    if isinstance(pat, Obj):
        return pat == t
    return (isinstance(t, Arith) and t.op == pat.op
            and _match_term(pat.left, t.left, binding) and _match_term(pat.right, t.right, binding))


def _match(pat: Formula, f: Formula, binding: dict) -> bool:
    """First-order matching of a quantifier-free template against a formula."""
    if type(pat) is not type(f):
        return False
    if isinstance(pat, Bot):
        return True
    if isinstance(pat, Pred):
        return (pat.name == f.name and pat.arity == f.arity
                and all(_match_term(p, t, binding) for p, t in zip(pat.args, f.args)))
    if isinstance(pat, Cmp):
        return (pat.rel == f.rel and _match_term(pat.left, f.left, binding)
                and _match_term(pat.right, f.right, binding))
    if isinstance(pat, (And, Or, Imp)):
        return _match(pat.left, f.left, binding) and _match(pat.right, f.right, binding)
    return False


def _catalog_hit(f: Formula, catalog) -> bool:
    _, body = forall_prefix(f)
    return any(_match(t, body, {}) for t in catalog)


_GROUP_B_TEXT = [f"X {r} Y | not X {r} Y" for r in RELATIONS] + [
    "X <= X",
    "X <= Y & Y <= Z -> X <= Z",
    "X <= Y & Y <= X -> X = Y",
    "X <= Y | Y <= X",
    "X <= Y <-> X < Y | X = Y",
    "X < Y <-> X <= Y & not X = Y",
    "X > Y <-> Y < X",
    "X >= Y <-> Y <= X",
    "X != Y <-> not X = Y",
    "#inf <= X",
    "X <= #sup",
]
GROUP_B = tuple(parse_formula(t) for t in _GROUP_B_TEXT)

_INT = {"L": INTEGER, "M": INTEGER, "N": INTEGER}
_GROUP_D_TEXT = [
    "M + N = N + M",
    "M * N = N * M",
    "(L + M) + N = L + (M + N)",
    "(L * M) * N = L * (M * N)",
    "L * (M + N) = L * M + L * N",
    "N + 0 = N",
    "N * 1 = N",
    "N - N = 0",
    "M <= N | N <= M",
    "N < N + 1",
    "N >= 0 | 0 - N >= 0",
]
GROUP_D = tuple(parse_formula(t, _INT) for t in _GROUP_D_TEXT)


def is_group_b_axiom(f: Formula) -> bool:
    """Order axioms: a catalog instance, possibly universally closed."""
    return _catalog_hit(f, GROUP_B)


def is_group_c_axiom(f: Formula) -> bool:
    """A true ground comparison c1 < c2, or the negation of a false one."""
    positive = True
    if isinstance(f, Imp) and isinstance(f.right, Bot):
        f, positive = f.left, False
    if not (isinstance(f, Cmp) and isinstance(f.left, Obj) and isinstance(f.right, Obj)):
        return False
    return eval_comparison(f.left.value, f.rel, f.right.value) == positive


def is_arithmetical(f: Formula) -> bool:
    if isinstance(f, Bot):
        return True
    if isinstance(f, Cmp):
        return term_sort(f.left) is INTEGER and term_sort(f.right) is INTEGER
    if isinstance(f, Pred):
        return False
    if isinstance(f, (And, Or, Imp)):
        return is_arithmetical(f.left) and is_arithmetical(f.right)
    return is_arithmetical(f.body)


def _truth(f: Formula) -> bool | None:
    """Truth of a quantifier- and variable-free arithmetical formula."""
    if isinstance(f, Bot):
        return False
    if isinstance(f, Cmp):
        if any(True for _ in term_vars(f.left)) or any(True for _ in term_vars(f.right)):
            return None
        from .formulas import eval_ground_term
        return eval_comparison(eval_ground_term(f.left), f.rel, eval_ground_term(f.right))
    if isinstance(f, (And, Or, Imp)):
        a, b = _truth(f.left), _truth(f.right)
        if a is None or b is None:
            return None
        return (a and b) if isinstance(f, And) else (a or b) if isinstance(f, Or) else (not a or b)
    return None


def _poly(t: FOTerm) -> dict:
    """Polynomial normal form: monomial (sorted tuple of variable names) -> coefficient."""
    if isinstance(t, Obj):
        return {(): t.value.value} if t.value.value else {}
    if isinstance(t, Var):
        return {(t.name,): 1}
    a, b = _poly(t.left), _poly(t.right)
    out = dict(a)
    if t.op in ("+", "-"):
        sign = 1 if t.op == "+" else -1
        for m, c in b.items():
            out[m] = out.get(m, 0) + sign * c
    else:
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def is_group_d_axiom(f: Formula, trusted: bool = False) -> str:
    """Decide membership of a closed arithmetical sentence: 'yes', 'yes-trusted' or 'no'.

    Decided sentences: variable-free ones (evaluated exactly), closures of
    instances of the catalog in ``GROUP_D``, and universally quantified
    polynomial identities ``t1 = t2``.
    """
    if free_vars(f):
        raise ValueError(f"group D sentences are closed; {show(f)} is not")
    if not is_arithmetical(f):
        raise ValueError(f"{show(f)} is not arithmetical")
    if _truth(f) is True:
        return "yes"
    if _catalog_hit(f, GROUP_D):
        return "yes"
    _, body = forall_prefix(f)
    if isinstance(body, Cmp) and body.rel == "=" and _poly(body.left) == _poly(body.right):
        return "yes"
    return "yes-trusted" if trusted else "no"


# ---------------------------------------------------------------------------
# Checking

@dataclass
class LineStatus:
    id: str
    ok: bool
    reason: str = ""


@dataclass
class Verdict:
    accepted: bool
    lines: list
    failed_line: str | None = None
    reason: str = ""
    uses_trusted_arithmetic: bool = False

    def __str__(self):
        if self.accepted:
            tail = " (uses trusted arithmetic)" if self.uses_trusted_arithmetic else ""
            return f"accepted{tail}"
        where = f"line {self.failed_line}: " if self.failed_line is not None else ""
        return f"rejected: {where}{self.reason}"

    def as_dict(self) -> dict:
        return {"accepted": self.accepted, "failed_line": self.failed_line, "reason": self.reason,
                "uses_trusted_arithmetic": self.uses_trusted_arithmetic,
                "lines": [{"id": s.id, "ok": s.ok, "reason": s.reason} for s in self.lines]}


class _Reject(Exception):
    pass


def _need(cond, msg):
    if not cond:
        raise _Reject(msg)


def _shape(f, cls, what):
    _need(isinstance(f, cls), f"{what} must be {cls.__name__.lower()}, got {show(f)}")
    return f


def _subst(f, v, t, role):
    try:
        return substitute(f, v, t)
    except SubstitutionError as e:
        raise _Reject(f"{role}: {e}") from None


def _show_set(keys, names: dict) -> str:
    """Assumption keys printed as the formulas were written."""
    return "{" + ", ".join(sorted(show(names.get(k, k)) for k in keys)) + "}"


def _check_rule(ln: ProofLine, prem: list) -> None:
    seq, c, r = ln.sequent, ln.sequent.conclusion, ln.rule
    names = {_key(a): a for sq in (seq, *prem) for a in sq.assumptions}

    def same(expected):
        _need(seq.keys == expected, f"{r}: assumptions should be {_show_set(expected, names)}, "
                                    f"got {_show_set(seq.keys, names)}")
    arity = {"andI": 2, "andE-left": 1, "andE-right": 1, "orI-left": 1, "orI-right": 1, "orE": 3,
             "impI": 1, "impE": 2, "C": 1, "W": 1, "forallI": 1, "forallE": 1, "existsI": 1,
             "existsE": 2, "Eq-forward": 2, "Eq-backward": 2}[r]
    _need(len(prem) == arity, f"{r} takes {arity} premise(s), got {len(prem)}")

    if r == "andI":
        a, b = prem
        _shape(c, And, "the conclusion of andI")
        _need(_alpha(c.left, a.conclusion) and _alpha(c.right, b.conclusion),
              "andI: conjuncts do not match the premises")
        same(a.keys | b.keys)
    elif r in ("andE-left", "andE-right"):
        (a,) = prem
        p = _shape(a.conclusion, And, f"the premise of {r}")
        _need(_alpha(c, p.left if r == "andE-left" else p.right), f"{r}: conclusion is not the conjunct")
        same(a.keys)
    elif r in ("orI-left", "orI-right"):
        (a,) = prem
        _shape(c, Or, f"the conclusion of {r}")
        _need(_alpha(c.left if r == "orI-left" else c.right, a.conclusion),
              f"{r}: the premise is not the {'left' if r == 'orI-left' else 'right'} disjunct")
        same(a.keys)
    elif r == "orE":
        a, b, d = prem
        disj = _shape(a.conclusion, Or, "the first premise of orE")
        _need(_alpha(b.conclusion, c) and _alpha(d.conclusion, c), "orE: case conclusions differ from the conclusion")
        kf, kg = _key(disj.left), _key(disj.right)
        _need(kf in b.keys, f"orE: second premise does not assume {show(disj.left)}")
        _need(kg in d.keys, f"orE: third premise does not assume {show(disj.right)}")
        base = a.keys | (b.keys - {kf}) | (d.keys - {kg})
        _need(base <= seq.keys <= base | {kf, kg},
              f"orE: assumptions should be {_show_set(base, names)}, got {_show_set(seq.keys, names)}")
    elif r == "impI":
        (a,) = prem
        imp = _shape(c, Imp, "the conclusion of impI")
        _need(_alpha(imp.right, a.conclusion), "impI: consequent differs from the premise")
        kf = _key(imp.left)
        _need(kf in a.keys, f"impI: premise does not assume {show(imp.left)}")
        _need(a.keys - {kf} <= seq.keys <= a.keys,
              f"impI: assumptions should be {_show_set(a.keys - {kf}, names)}, got {_show_set(seq.keys, names)}")
    elif r == "impE":
        a, b = prem
        imp = _shape(b.conclusion, Imp, "the second premise of impE")
        _need(_alpha(imp.left, a.conclusion), "impE: first premise is not the antecedent")
        _need(_alpha(imp.right, c), "impE: conclusion is not the consequent")
        same(a.keys | b.keys)
    elif r == "C":
        (a,) = prem
        _shape(a.conclusion, Bot, "the premise of C")
        same(a.keys)
    elif r == "W":
        (a,) = prem
        _need(_alpha(a.conclusion, c), "W: conclusion changed")
        _need(a.keys <= seq.keys, "W: assumptions were dropped")
    elif r == "forallI":
        (a,) = prem
        q = _shape(c, Forall, "the conclusion of forallI")
        _need(_alpha(q.body, a.conclusion), "forallI: body differs from the premise")
        same(a.keys)
        bad = [x for x in seq.assumptions if q.var in free_vars(x)]
        _need(not bad, f"forallI: eigenvariable {q.var} is free in the assumption {show(bad[0])}" if bad else "")
    elif r == "forallE":
        (a,) = prem
        q = _shape(a.conclusion, Forall, "the premise of forallE")
        t = ln.hints.get("term")
        _need(t is not None, "forallE needs the hint 'term'")
        _need(_alpha(c, _subst(q.body, q.var, t, "forallE")), "forallE: conclusion is not the instance")
        same(a.keys)
    elif r == "existsI":
        (a,) = prem
        q = _shape(c, Exists, "the conclusion of existsI")
        t = ln.hints.get("term")
        _need(t is not None, "existsI needs the hint 'term'")
        _need(_alpha(a.conclusion, _subst(q.body, q.var, t, "existsI")), "existsI: premise is not the instance")
        same(a.keys)
    elif r == "existsE":
        a, b = prem
        q = _shape(a.conclusion, Exists, "the first premise of existsE")
        _need(_alpha(b.conclusion, c), "existsE: conclusion differs from the second premise")
        kf = _key(q.body)
        _need(kf in b.keys, f"existsE: second premise does not assume {show(q.body)}")
        options = [b.keys - {kf}, b.keys]
        fits = [o for o in options if seq.keys == a.keys | o]
        _need(fits, "existsE: assumptions are not the union of the premises' ones")
        by_key = {_key(x): x for x in b.assumptions}
        _need(q.var not in free_vars(c), f"existsE: eigenvariable {q.var} is free in the conclusion")
        _need(any(all(q.var not in free_vars(by_key[k]) for k in o) for o in fits),
              f"existsE: eigenvariable {q.var} is free in the side assumptions")
    else:  # Eq-forward / Eq-backward
        a, b = prem
        eq = _shape(a.conclusion, Cmp, "the first premise of an Eq rule")
        _need(eq.rel == "=", "the first premise of an Eq rule must be an equality")
        v, tmpl = ln.hints.get("var"), ln.hints.get("template")
        _need(v is not None and tmpl is not None, f"{r} needs the hints 'var' and 'template'")
        src, dst = (eq.left, eq.right) if r == "Eq-forward" else (eq.right, eq.left)
        _need(_alpha(b.conclusion, _subst(tmpl, v, src, r)), f"{r}: second premise is not the template instance")
        _need(_alpha(c, _subst(tmpl, v, dst, r)), f"{r}: conclusion is not the template instance")
        same(a.keys | b.keys)


def _check_axiom(ln: ProofLine, int_mode: bool, trust_arith: bool) -> bool:
    """Validate an axiom line; returns True if trusted arithmetic was used."""
    kind, seq = ln.rule, ln.sequent
    if kind in HTA_ONLY and int_mode:
        raise _Reject(f"axiom kind {kind} is not available in Int mode")
    if ln.premises:
        raise _Reject("axioms take no premises")
    if kind == "id":
        _need(bool(seq.assumptions) and is_axiom_identity(seq), "not of the form F => F")
        return False
    _need(not seq.assumptions, f"{kind} axioms have no assumptions")
    c = seq.conclusion
    if kind == "eq-refl":
        _need(is_axiom_identity(seq), "not of the form t = t")
    elif kind == "hosoi":
        _need(is_hosoi_instance(c), "not an instance of F | (F -> G) | not G")
    elif kind == "groupB":
        _need(is_group_b_axiom(c), "not in the order axiom catalog")
    elif kind == "groupC":
        _need(is_group_c_axiom(c), "not a true ground comparison literal")
    else:
        try:
            ans = is_group_d_axiom(c, trusted=(kind == "groupD-trusted" and trust_arith))
        except ValueError as e:
            raise _Reject(str(e)) from None
        if ans == "no" and kind == "groupD-trusted":
            raise _Reject("trusted arithmetic is disabled (enable --trust-arith)")
        _need(ans != "no", "not a decided arithmetical truth (mark it groupD-trusted to accept it on trust)")
        return ans == "yes-trusted"
    return False


def check_proof(script: ProofScript, int_mode: bool = False, trust_arith: bool = False) -> Verdict:
    """Check every line of ``script``; lines are validated locally against their premises."""
    statuses, seen = [], {}
    trusted = False
    for ln in script.lines:
        rule = ALIASES.get(ln.rule, ln.rule)
        ln = ProofLine(ln.id, ln.sequent, rule, ln.premises, ln.hints)
        try:
            if rule in AXIOM_KINDS:
                trusted |= _check_axiom(ln, int_mode, trust_arith)
            elif rule in RULE_NAMES:
                missing = [p for p in ln.premises if p not in seen]
                _need(not missing, f"premise {missing[0]} does not refer to an earlier line" if missing else "")
                _check_rule(ln, [seen[p] for p in ln.premises])
            else:
                raise _Reject(f"unknown rule {ln.rule!r}")
            statuses.append(LineStatus(ln.id, True))
        except _Reject as e:
            statuses.append(LineStatus(ln.id, False, f"{rule}: {e}" if not str(e).startswith(rule) else str(e)))
        seen[ln.id] = ln.sequent
    bad = next((s for s in statuses if not s.ok), None)
    if bad is not None:
        return Verdict(False, statuses, bad.id, bad.reason, trusted)
    if not script.lines:
        return Verdict(False, statuses, None, "empty proof", trusted)
    if script.goal is not None and script.lines[-1].sequent != script.goal:
        return Verdict(False, statuses, script.lines[-1].id,
                       f"last line {script.lines[-1].sequent} does not match the goal {script.goal}", trusted)
    return Verdict(True, statuses, uses_trusted_arithmetic=trusted)


# ---------------------------------------------------------------------------
# Strong equivalence via proofs

@dataclass
class DirectionResult:
    accepted: bool
    verdict: Verdict
    missing: list       # target sentences no line derives from the allowed assumptions


@dataclass
class TaskResult:
    accepted: bool
    forward: DirectionResult
    backward: DirectionResult

    @property
    def message(self) -> str:
        if self.accepted:
            return "strongly equivalent (HTA-certified)"
        parts = []
        for name, d in (("1->2", self.forward), ("2->1", self.backward)):
            if not d.verdict.accepted:
                parts.append(f"{name}: proof {d.verdict}")
            elif d.missing:
                parts.append(f"{name}: no line derives {', '.join(show(m) for m in d.missing)}")
        return "not certified: " + "; ".join(parts)

    @property
    def uses_trusted_arithmetic(self) -> bool:
        return self.forward.verdict.uses_trusted_arithmetic or self.backward.verdict.uses_trusted_arithmetic


def derives(script: ProofScript, verdict: Verdict, premises: list, targets: list) -> list:
    """Targets not derived by any line whose assumptions are among ``premises``."""
    if not verdict.accepted:
        return list(targets)
    usable = [ln.sequent for ln in script.lines
              if all(any(same_sentence(a, p) for p in premises) for a in ln.sequent.assumptions)]
    return [t for t in targets if not any(same_sentence(s.conclusion, t) for s in usable)]


def check_equivalence_task(p1: S.Program, p2: S.Program, proof_12: ProofScript, proof_21: ProofScript,
                           int_mode: bool = False, trust_arith: bool = False) -> TaskResult:
    """Both translations must be derivable from each other by accepted scripts."""
    nu1, nu2 = nu_program(p1), nu_program(p2)
    out = []
    for script, src, dst in ((proof_12, nu1, nu2), (proof_21, nu2, nu1)):
        v = check_proof(script, int_mode, trust_arith)
        missing = derives(script, v, src, dst)
        out.append(DirectionResult(v.accepted and not missing, v, missing))
    return TaskResult(out[0].accepted and out[1].accepted, out[0], out[1])
