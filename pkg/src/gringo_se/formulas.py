"""Two-sorted first-order formulas: terms, substitution, closure, evaluation.

Variables have the sort ``generic`` or its subsort ``integer``.  Object
constants are the precomputed terms of :mod:`gringo_se.syntax`; a constant
has sort integer iff it is a numeral.  The only function constants are the
integer operations ``+``, ``-`` and ``*``.

Text syntax (used by proof scripts and CLI output)::

    forall X, int N (p(X) & 1 <= N <= 2 -> q(X, N + 1))
    exists int N (not p(N) | #false)

``not F`` abbreviates ``F -> #false`` and ``F <-> G`` the conjunction of
both implications.  ``&`` and ``|`` associate to the right, ``->`` too.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

from .syntax import (
    RELATIONS, Inf, Numeral, ParseError, Precomputed, Sup, Symbol, TokenStream,
    is_precomputed, precomputed_compare,
)


class Sort(Enum):
    GENERIC = "generic"
    INTEGER = "integer"

    def accepts(self, other: "Sort") -> bool:
        """True if a term of sort ``other`` may stand where ``self`` is expected."""
        return self is Sort.GENERIC or other is Sort.INTEGER


GENERIC, INTEGER = Sort.GENERIC, Sort.INTEGER


class SortError(TypeError):
    pass


class SubstitutionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    name: str
    sort: Sort = GENERIC

    def __str__(self):
        return self.name

    def decl(self) -> str:
        return f"int {self.name}" if self.sort is INTEGER else self.name


@dataclass(frozen=True)
class Obj:
    value: Precomputed

    def __post_init__(self):
        if not is_precomputed(self.value):
            raise SortError(f"object constants are precomputed terms, got {self.value!r}")

    def __str__(self):
        return str(self.value)


ARITH_OPS = ("+", "-", "*")
_PREC = {"+": 1, "-": 1, "*": 2}


@dataclass(frozen=True)
class Arith:
    op: str
    left: "FOTerm"
    right: "FOTerm"

    def __post_init__(self):
        if self.op not in ARITH_OPS:
            raise SortError(f"{self.op!r} is not a function constant")
        for side in (self.left, self.right):
            if term_sort(side) is not INTEGER:
                raise SortError(f"argument {side} of {self.op!r} is not of sort integer")

    def __str__(self):
        return show_term(self)


FOTerm = Union[Var, Obj, Arith]


def term_sort(t: FOTerm) -> Sort:
    if isinstance(t, Var):
        return t.sort
    if isinstance(t, Obj):
        return INTEGER if isinstance(t.value, Numeral) else GENERIC
    return INTEGER


def num(n: int) -> Obj:
    return Obj(Numeral(n))


def show_term(t: FOTerm, ctx: int = 0, right: bool = False) -> str:
    if not isinstance(t, Arith):
        return str(t)
    prec = _PREC[t.op]
    s = f"{show_term(t.left, prec)} {t.op} {show_term(t.right, prec, True)}"
    if prec < ctx or (prec == ctx and right):
        return f"({s})"
    return s


def term_vars(t: FOTerm) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Arith):
        yield from term_vars(t.left)
        yield from term_vars(t.right)


def eval_ground_term(t: FOTerm) -> Precomputed:
    """Value of a variable-free term; arithmetic is exact over Python ints."""
    if isinstance(t, Obj):
        return t.value
    if isinstance(t, Var):
        raise ValueError(f"term contains the variable {t}")
    a = eval_ground_term(t.left).value
    b = eval_ground_term(t.right).value
    if t.op == "+":
        return Numeral(a + b)
    if t.op == "-":
        return Numeral(a - b)
    return Numeral(a * b)


def eval_comparison(c1: Precomputed, rel: str, c2: Precomputed) -> bool:
    c = precomputed_compare(c1, c2)
    return {"=": c == 0, "!=": c != 0, "<": c < 0, ">": c > 0, "<=": c <= 0, ">=": c >= 0}[rel]


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True)
class Cmp:
    left: FOTerm
    rel: str
    right: FOTerm

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown comparison {self.rel!r}")


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


Formula = Union[Pred, Cmp, Bot, And, Or, Imp, Forall, Exists]
BOT = Bot()
_BINARY = (And, Or, Imp)
_QUANT = (Forall, Exists)


def Not(f: Formula) -> Formula:
    return Imp(f, BOT)


def Iff(f: Formula, g: Formula) -> Formula:
    return And(Imp(f, g), Imp(g, f))


def conj(fs: Iterable[Formula]) -> Formula | None:
    """Right-nested conjunction; None for the empty sequence."""
    fs = list(fs)
    if not fs:
        return None
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def is_negation(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bot)


for _cls in (Pred, Cmp, Bot, And, Or, Imp, Forall, Exists):
    _cls.__str__ = lambda self: show(self)


# ---------------------------------------------------------------------------
# Variables and substitution

def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Pred):
        return frozenset(v for t in f.args for v in term_vars(t))
    if isinstance(f, Cmp):
        return frozenset(itertools.chain(term_vars(f.left), term_vars(f.right)))
    if isinstance(f, Bot):
        return frozenset()
    if isinstance(f, _BINARY):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def all_vars(f: Formula) -> frozenset:
    """Free and bound variables alike."""
    if isinstance(f, (Pred, Cmp, Bot)):
        return free_vars(f)
    if isinstance(f, _BINARY):
        return all_vars(f.left) | all_vars(f.right)
    return all_vars(f.body) | {f.var}


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def subst_term(t: FOTerm, v: Var, s: FOTerm) -> FOTerm:
    if isinstance(t, Var):
        return s if t == v else t
    if isinstance(t, Arith):
        return Arith(t.op, subst_term(t.left, v, s), subst_term(t.right, v, s))
    return t


def _substitutable(f: Formula, v: Var, tvars: frozenset) -> bool:
    if isinstance(f, (Pred, Cmp, Bot)):
        return True
    if isinstance(f, _BINARY):
        return _substitutable(f.left, v, tvars) and _substitutable(f.right, v, tvars)
    if f.var == v:
        return True
    if f.var in tvars and v in free_vars(f.body):
        return False
    return _substitutable(f.body, v, tvars)


def is_substitutable(f: Formula, v: Var, t: FOTerm) -> bool:
    """True if ``t`` may replace the free occurrences of ``v`` in ``f``.

    No free occurrence may fall inside a quantifier over a variable of
    ``t``, and an integer variable only accepts integer terms.
    """
    if not v.sort.accepts(term_sort(t)):
        return False
    return _substitutable(f, v, frozenset(term_vars(t)))


def _subst(f: Formula, v: Var, t: FOTerm) -> Formula:
    if isinstance(f, Pred):
        return Pred(f.name, tuple(subst_term(a, v, t) for a in f.args))
    if isinstance(f, Cmp):
        return Cmp(subst_term(f.left, v, t), f.rel, subst_term(f.right, v, t))
    if isinstance(f, Bot):
        return f
    if isinstance(f, _BINARY):
        return type(f)(_subst(f.left, v, t), _subst(f.right, v, t))
    if f.var == v:
        return f
    return type(f)(f.var, _subst(f.body, v, t))


def substitute(f: Formula, v: Var, t: FOTerm) -> Formula:
    """``f`` with ``t`` put for every free occurrence of ``v``."""
    if not v.sort.accepts(term_sort(t)):
        raise SubstitutionError(f"cannot substitute {term_sort(t).value} term {show_term(t)} "
                                f"for integer variable {v}")
    if not _substitutable(f, v, frozenset(term_vars(t))):
        raise SubstitutionError(f"{show_term(t)} is not substitutable for {v} in {show(f)}: "
                                "a variable of the term would be captured")
    return _subst(f, v, t)


class FreshNames:
    """Generator of reserved variable names ``_v0, _v1, ...``.

    The parsers never produce names starting with an underscore.
    """

    def __init__(self, avoid: Iterable[str] = ()):
        self.avoid = set(avoid)
        self.count = 0

    def __call__(self, sort: Sort = GENERIC) -> Var:
        while True:
            name = f"_v{self.count}"
            self.count += 1
            if name not in self.avoid:
                self.avoid.add(name)
                return Var(name, sort)


def substitute_many(f: Formula, mapping: dict) -> Formula:
    """Simultaneous substitution routed through fresh intermediate variables."""
    fresh = FreshNames(v.name for v in all_vars(f))
    for t in mapping.values():
        fresh.avoid.update(v.name for v in term_vars(t))
    staged = []
    for v, t in mapping.items():
        tmp = fresh(term_sort(t))
        f = substitute(f, v, tmp)
        staged.append((tmp, t))
    for tmp, t in staged:
        f = substitute(f, tmp, t)
    return f


def _var_order(v: Var):
    return (v.name, v.sort.value)


def universal_closure(f: Formula) -> Formula:
    for v in sorted(free_vars(f), key=_var_order, reverse=True):
        f = Forall(v, f)
    return f


def forall_prefix(f: Formula) -> tuple[list[Var], Formula]:
    """Split off the leading block of universal quantifiers."""
    vs = []
    while isinstance(f, Forall):
        vs.append(f.var)
        f = f.body
    return vs, f


# ---------------------------------------------------------------------------
# Alpha-equivalence

def canonical(f: Formula, _env=None, _depth: int = 0) -> Formula:
    """Rename bound variables to ``_b0, _b1, ...`` by binding depth.

    Two formulas are alpha-equivalent iff their canonical forms are equal.
    """
    env = _env or {}
    if isinstance(f, Pred):
        return Pred(f.name, tuple(_canon_term(a, env) for a in f.args))
    if isinstance(f, Cmp):
        return Cmp(_canon_term(f.left, env), f.rel, _canon_term(f.right, env))
    if isinstance(f, Bot):
        return f
    if isinstance(f, _BINARY):
        return type(f)(canonical(f.left, env, _depth), canonical(f.right, env, _depth))
    nv = Var(f"_b{_depth}", f.var.sort)
    inner = dict(env)
    inner[f.var] = nv
    return type(f)(nv, canonical(f.body, inner, _depth + 1))


def _canon_term(t: FOTerm, env: dict) -> FOTerm:
    if isinstance(t, Var):
        return env.get(t, t)
    if isinstance(t, Arith):
        return Arith(t.op, _canon_term(t.left, env), _canon_term(t.right, env))
    return t


def alpha_eq(f: Formula, g: Formula) -> bool:
    return canonical(f) == canonical(g)


def same_sentence(f: Formula, g: Formula) -> bool:
    """Alpha-equivalence that also ignores the order of the leading foralls."""
    if alpha_eq(f, g):
        return True
    vf, bf = forall_prefix(f)
    vg, bg = forall_prefix(g)
    if len(vf) != len(vg) or sorted(v.sort.value for v in vf) != sorted(v.sort.value for v in vg):
        return False
    fresh = FreshNames(v.name for v in all_vars(f) | all_vars(g))
    targets = [fresh(v.sort) for v in vf]
    bf = substitute_many(bf, dict(zip(vf, targets)))
    key = canonical(bf)
    for perm in itertools.permutations(vg):
        if [v.sort for v in perm] != [v.sort for v in vf]:
            continue
        if canonical(substitute_many(bg, dict(zip(perm, targets)))) == key:
            return True
    return False


# ---------------------------------------------------------------------------
# Printing

_LEVEL = {Imp: 1, Or: 2, And: 3}


def show(f: Formula) -> str:
    return _show(f, 0)


def _show(f: Formula, ctx: int) -> str:
    if isinstance(f, Pred):
        if not f.args:
            return f.name
        return f"{f.name}({', '.join(show_term(a) for a in f.args)})"
    if isinstance(f, Cmp):
        s = f"{show_term(f.left)} {f.rel} {show_term(f.right)}"
        return s
    if isinstance(f, Bot):
        return "#false"
    if is_negation(f):
        return "not " + _show(f.left, 4)
    if isinstance(f, _QUANT):
        word = "forall" if isinstance(f, Forall) else "exists"
        decls = [f.var]
        body = f.body
        while type(body) is type(f):
            decls.append(body.var)
            body = body.body
        return f"{word} {', '.join(v.decl() for v in decls)} ({_show(body, 0)})"
    level = _LEVEL[type(f)]
    sym = {Imp: "->", Or: "|", And: "&"}[type(f)]
    s = f"{_show(f.left, level + 1)} {sym} {_show(f.right, level)}"
    return f"({s})" if level < ctx else s


# ---------------------------------------------------------------------------
# Parsing

_QUANT_WORDS = ("forall", "exists")
_FORMULA_KEYWORDS = {"not", "forall", "exists"}


class _FormulaParser:
    def __init__(self, text: str, env: dict | None, strict: bool):
        self.ts = TokenStream(text)
        self.free = dict(env or {})
        self.strict = strict
        self.bound = []

    def var(self, name: str) -> Var:
        for v in reversed(self.bound):
            if v.name == name:
                return v
        if name in self.free:
            sort = self.free[name]
            return Var(name, sort if isinstance(sort, Sort) else Sort(sort))
        if self.strict:
            self.ts.fail(f"undeclared variable {name}")
        return Var(name, GENERIC)

    # formulas
    def formula(self) -> Formula:
        left = self.imp()
        if self.ts.at("<->"):
            self.ts.advance()
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.ts.at("->"):
            self.ts.advance()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        if self.ts.at("|"):
            self.ts.advance()
            return Or(left, self.disj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        if self.ts.at("&"):
            self.ts.advance()
            return And(left, self.conj())
        return left

    def unary(self) -> Formula:
        ts = self.ts
        if ts.at("not"):
            ts.advance()
            return Not(self.unary())
        if ts.at(*_QUANT_WORDS):
            word = ts.advance().text
            decls = [self.decl()]
            while True:
                if ts.at(","):
                    ts.advance()
                    decls.append(self.decl())
                elif ts.tok.kind == "var" or ts.at("int"):
                    decls.append(self.decl())
                else:
                    break
            ts.expect("(")
            self.bound.extend(decls)
            body = self.formula()
            del self.bound[len(self.bound) - len(decls):]
            ts.expect(")")
            cls = Forall if word == "forall" else Exists
            for v in reversed(decls):
                body = cls(v, body)
            return body
        return self.primary()

    def decl(self) -> Var:
        ts = self.ts
        sort = GENERIC
        if ts.at("int") and ts.peek().kind == "var":
            ts.advance()
            sort = INTEGER
        if ts.tok.kind != "var":
            ts.fail(f"unexpected {ts.describe()}", ["variable", "'int'"])
        return Var(ts.advance().text, sort)

    def primary(self) -> Formula:
        ts = self.ts
        if ts.at("#false"):
            ts.advance()
            return BOT
        start = ts.pos
        try:
            return self.comparison_chain()
        except ParseError:
            ts.pos = start
        if ts.at("("):
            ts.advance()
            f = self.formula()
            ts.expect(")")
            return f
        tok = ts.tok
        if tok.kind != "ident" or tok.text in _FORMULA_KEYWORDS:
            ts.fail(f"unexpected {ts.describe()}", ["atom", "comparison", "'('", "'not'",
                                                    "'forall'", "'exists'", "'#false'"])
        ts.advance()
        args = []
        if ts.at("("):
            ts.advance()
            args.append(self.term())
            while ts.at(","):
                ts.advance()
                args.append(self.term())
            ts.expect(")")
        return Pred(tok.text, tuple(args))

    def comparison_chain(self) -> Formula:
        ts = self.ts
        terms = [self.term()]
        rels = []
        while ts.tok.kind == "op" and ts.tok.text in RELATIONS:
            rels.append(ts.advance().text)
            terms.append(self.term())
        if not rels:
            ts.fail("not a comparison")
        cmps = [Cmp(terms[i], rels[i], terms[i + 1]) for i in range(len(rels))]
        return conj(cmps)

    # terms
    def term(self) -> FOTerm:
        left = self.factor()
        while self.ts.at("+", "-"):
            op = self.ts.advance().text
            left = self.arith(op, left, self.factor())
        return left

    def factor(self) -> FOTerm:
        left = self.tprimary()
        while self.ts.at("*"):
            self.ts.advance()
            left = self.arith("*", left, self.tprimary())
        return left

    def arith(self, op, left, right) -> FOTerm:
        try:
            return Arith(op, left, right)
        except SortError as e:
            self.ts.fail(str(e))

    def tprimary(self) -> FOTerm:
        ts = self.ts
        tok = ts.tok
        if tok.kind == "num":
            ts.advance()
            return num(int(tok.text))
        if tok.kind == "op" and tok.text == "-":
            ts.advance()
            if ts.tok.kind == "num":
                return num(-int(ts.advance().text))
            return self.arith("-", num(0), self.tprimary())
        if tok.kind == "var":
            ts.advance()
            return self.var(tok.text)
        if tok.kind == "ident" and tok.text not in _FORMULA_KEYWORDS and ts.peek().text != "(":
            ts.advance()
            return Obj(Symbol(tok.text))
        if tok.kind == "hash" and tok.text in ("#inf", "#sup"):
            ts.advance()
            return Obj(Inf() if tok.text == "#inf" else Sup())
        if tok.kind == "op" and tok.text == "(":
            ts.advance()
            t = self.term()
            ts.expect(")")
            return t
        ts.fail(f"unexpected {ts.describe()}", ["term"])


def parse_formula(text: str, env: dict | None = None, strict: bool = False) -> Formula:
    """Parse formula text.

    ``env`` maps names of free variables to their sort; other free
    variables are generic unless ``strict`` is set, which makes them an
    error.
    """
    p = _FormulaParser(text, env, strict)
    f = p.formula()
    if p.ts.tok.kind != "eof":
        p.ts.fail(f"unexpected {p.ts.describe()}", ["end of input", "'&'", "'|'", "'->'", "'<->'"])
    return f


def parse_fo_term(text: str, env: dict | None = None, strict: bool = False) -> FOTerm:
    p = _FormulaParser(text, env, strict)
    t = p.term()
    if p.ts.tok.kind != "eof":
        p.ts.fail(f"unexpected {p.ts.describe()}", ["end of input"])
    return t
