"""Mini-GRINGO programs: terms, rules, a text parser, and regularity checks.

Concrete syntax is clingo-like::

    p(X,Y) :- X = 1..2, Y = 1..2.
    {q(X)} :- p(X+1).
    :- p(X), not q(X).      % constraint

``#inf`` and ``#sup`` denote the extremal precomputed terms, ``%`` starts a
comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Numeral:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Symbol:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Inf:
    def __str__(self):
        return "#inf"


@dataclass(frozen=True)
class Sup:
    def __str__(self):
        return "#sup"


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


OPERATIONS = ("+", "-", "*", "/", "\\", "..")
_TERM_PREC = {"..": 0, "+": 1, "-": 1, "*": 2, "/": 2, "\\": 2}


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.op not in OPERATIONS:
            raise ValueError(f"unknown operation {self.op!r}")

    def __str__(self):
        return _show_term(self)


Precomputed = Union[Numeral, Symbol, Inf, Sup]
Term = Union[Numeral, Symbol, Inf, Sup, Variable, BinOp]


def _show_term(t: Term, ctx: int = -1, right: bool = False) -> str:
    if not isinstance(t, BinOp):
        return str(t)
    prec = _TERM_PREC[t.op]
    if t.op == "..":
        # intervals are non-associative: nested intervals always get parens
        s = f"{_show_term(t.left, 1)}..{_show_term(t.right, 1)}"
    else:
        s = f"{_show_term(t.left, prec)}{t.op}{_show_term(t.right, prec, True)}"
    if prec < ctx or (prec == ctx and right) or (t.op == ".." and ctx >= 0):
        return f"({s})"
    return s


def is_precomputed(t) -> bool:
    return isinstance(t, (Numeral, Symbol, Inf, Sup))


def term_variables(t: Term) -> Iterator[Variable]:
    """Variables of ``t`` in left-to-right order (with repetitions)."""
    if isinstance(t, Variable):
        yield t
    elif isinstance(t, BinOp):
        yield from term_variables(t.left)
        yield from term_variables(t.right)


def _order_key(c: Precomputed):
    if isinstance(c, Inf):
        return (0,)
    if isinstance(c, Numeral):
        return (1, c.value)
    if isinstance(c, Symbol):
        return (2, c.name)
    if isinstance(c, Sup):
        return (3,)
    raise ValueError(f"not a precomputed term: {c}")


def precomputed_compare(c1: Precomputed, c2: Precomputed) -> int:
    """Compare precomputed terms, returning -1, 0 or 1.

    The order is total: ``#inf`` < numerals (by value) < symbolic constants
    (lexicographic) < ``#sup``.
    """
    k1, k2 = _order_key(c1), _order_key(c2)
    return (k1 > k2) - (k1 < k2)


def precomputed_key(c: Precomputed):
    """Sort key realizing :func:`precomputed_compare`."""
    return _order_key(c)


# ---------------------------------------------------------------------------
# Rules and programs

RELATIONS = ("=", "!=", "<", ">", "<=", ">=")


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negations: int = 0

    def __post_init__(self):
        if self.negations not in (0, 1, 2):
            raise ValueError("a literal carries 0, 1 or 2 negations")

    def __str__(self):
        return "not " * self.negations + str(self.atom)


@dataclass(frozen=True)
class Comparison:
    left: Term
    rel: str
    right: Term

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown comparison {self.rel!r}")

    def __str__(self):
        return f"{_show_term(self.left)} {self.rel} {_show_term(self.right)}"


@dataclass(frozen=True)
class Rule:
    """``head :- body``; ``head`` is None for constraints."""
    head: Atom | None
    body: tuple = ()
    choice: bool = False

    def __post_init__(self):
        if self.choice and self.head is None:
            raise ValueError("a constraint has no choice head")

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    def __str__(self):
        head = ""
        if self.head is not None:
            head = "{" + str(self.head) + "}" if self.choice else str(self.head)
        if not self.body:
            return f"{head}." if head else ":- ."
        body = ", ".join(str(b) for b in self.body)
        return f"{head} :- {body}." if head else f":- {body}."


class Program:
    """A finite set of rules; insertion order is kept for display."""

    def __init__(self, rules=()):
        seen = []
        for r in rules:
            if r not in seen:
                seen.append(r)
        self.rules = tuple(seen)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        if not isinstance(other, Program):
            return NotImplemented
        return set(self.rules) == set(other.rules)

    def __hash__(self):
        return hash(frozenset(self.rules))

    def __repr__(self):
        return f"Program({list(self.rules)!r})"

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def unparse(program: Program) -> str:
    return str(program) + ("\n" if len(program) else "")


def rule_terms(rule: Rule) -> Iterator[tuple[str, Term]]:
    """Every top-level term of a rule with a label saying where it sits."""
    if rule.head is not None:
        for i, t in enumerate(rule.head.args):
            yield f"head {rule.head} argument {i + 1}", t
    for b in rule.body:
        if isinstance(b, Literal):
            for i, t in enumerate(b.atom.args):
                yield f"literal {b} argument {i + 1}", t
        else:
            yield f"comparison {b} left side", b.left
            yield f"comparison {b} right side", b.right


def rule_variables(rule: Rule) -> list[Variable]:
    """Distinct variables of ``rule`` in order of first occurrence."""
    out = []
    for _, t in rule_terms(rule):
        for v in term_variables(t):
            if v not in out:
                out.append(v)
    return out


# ---------------------------------------------------------------------------
# Lexer shared by the program parser and the formula parser

class ParseError(Exception):
    def __init__(self, message, line=0, column=0, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        where = f"{line}:{column}: " if line else ""
        tail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{tail}")


@dataclass(frozen=True)
class Token:
    kind: str      # "ident", "var", "num", "hash", "op", "eof"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<num>[0-9]+)
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z][A-Za-z0-9_']*)
  | (?P<hash>\#[a-z]+)
  | (?P<op><->|->|:-|\.\.|<=|>=|!=|[-+*/\\<>=(){},.&|])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def at(self, *texts) -> bool:
        return self.tok.kind in ("op", "hash", "ident") and self.tok.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "eof":
            self.fail(f"unexpected {self.describe()}", [repr(text)])
        return self.advance()

    def describe(self) -> str:
        return "end of input" if self.tok.kind == "eof" else repr(self.tok.text)

    def fail(self, message, expected=()):
        raise ParseError(message, self.tok.line, self.tok.column, expected)


# ---------------------------------------------------------------------------
# Program parser

_KEYWORDS = {"not"}
_PRIMARY_START = ["numeral", "constant", "variable", "'#inf'", "'#sup'", "'('", "'-'"]


def parse_term(ts: TokenStream) -> Term:
    left = _parse_arith(ts)
    if ts.at(".."):
        ts.advance()
        left = BinOp("..", left, _parse_arith(ts))
        if ts.at(".."):
            ts.fail("nested intervals need parentheses")
    return left


def _parse_arith(ts: TokenStream) -> Term:
    left = _parse_factor(ts)
    while ts.at("+", "-"):
        op = ts.advance().text
        left = BinOp(op, left, _parse_factor(ts))
    return left


def _parse_factor(ts: TokenStream) -> Term:
    left = _parse_primary(ts)
    while ts.at("*", "/", "\\"):
        op = ts.advance().text
        left = BinOp(op, left, _parse_primary(ts))
    return left


def _parse_primary(ts: TokenStream) -> Term:
    tok = ts.tok
    if tok.kind == "num":
        ts.advance()
        return Numeral(int(tok.text))
    if tok.kind == "op" and tok.text == "-":
        ts.advance()
        if ts.tok.kind == "num":
            return Numeral(-int(ts.advance().text))
        return BinOp("-", Numeral(0), _parse_primary(ts))
    if tok.kind == "ident" and tok.text not in _KEYWORDS:
        ts.advance()
        return Symbol(tok.text)
    if tok.kind == "var":
        ts.advance()
        return Variable(tok.text)
    if tok.kind == "hash" and tok.text in ("#inf", "#sup"):
        ts.advance()
        return Inf() if tok.text == "#inf" else Sup()
    if tok.kind == "op" and tok.text == "(":
        ts.advance()
        t = parse_term(ts)
        ts.expect(")")
        return t
    ts.fail(f"unexpected {ts.describe()}", _PRIMARY_START)


def _parse_atom(ts: TokenStream) -> Atom:
    tok = ts.tok
    if tok.kind != "ident" or tok.text in _KEYWORDS:
        ts.fail(f"unexpected {ts.describe()}", ["predicate name"])
    ts.advance()
    args = []
    if ts.at("("):
        ts.advance()
        args.append(parse_term(ts))
        while ts.at(","):
            ts.advance()
            args.append(parse_term(ts))
        ts.expect(")")
    return Atom(tok.text, tuple(args))


def _parse_body_element(ts: TokenStream):
    if ts.at("not"):
        n = 0
        while ts.at("not") and n < 2:
            ts.advance()
            n += 1
        return Literal(_parse_atom(ts), n)
    start = ts.pos
    try:
        left = parse_term(ts)
        if ts.tok.kind == "op" and ts.tok.text in RELATIONS:
            rel = ts.advance().text
            return Comparison(left, rel, parse_term(ts))
    except ParseError:
        pass
    ts.pos = start
    atom = _parse_atom(ts)
    if ts.tok.kind == "op" and ts.tok.text in RELATIONS:
        ts.fail("comparison with an atom on one side")
    return Literal(atom, 0)


def _parse_rule(ts: TokenStream) -> Rule:
    head, choice = None, False
    if ts.at("{"):
        ts.advance()
        head, choice = _parse_atom(ts), True
        ts.expect("}")
    elif not ts.at(":-"):
        head = _parse_atom(ts)
    body = []
    if ts.at(":-"):
        ts.advance()
        if not ts.at("."):
            body.append(_parse_body_element(ts))
            while ts.at(","):
                ts.advance()
                body.append(_parse_body_element(ts))
    elif head is None:
        ts.fail(f"unexpected {ts.describe()}", ["':-'"])
    if not ts.at("."):
        ts.fail(f"unexpected {ts.describe()}", ["'.'", "','"] if body else ["'.'", "':-'"])
    ts.advance()
    return Rule(head, tuple(body), choice)


def parse_program(text: str) -> Program:
    ts = TokenStream(text)
    rules = []
    while ts.tok.kind != "eof":
        rules.append(_parse_rule(ts))
    return Program(rules)


def parse_rule(text: str) -> Rule:
    prog = parse_program(text)
    if len(prog) != 1:
        raise ParseError(f"expected exactly one rule, got {len(prog)}")
    return prog.rules[0]


def parse_program_term(text: str) -> Term:
    ts = TokenStream(text)
    t = parse_term(ts)
    if ts.tok.kind != "eof":
        ts.fail(f"unexpected {ts.describe()}", ["end of input"])
    return t


# ---------------------------------------------------------------------------
# Regularity

class Kind(Enum):
    FIRST = "regular, first kind"
    SECOND = "regular, second kind"
    IRREGULAR = "irregular"


@dataclass(frozen=True)
class TermKind:
    kind: Kind
    reason: str = ""

    @property
    def regular(self) -> bool:
        return self.kind is not Kind.IRREGULAR

    def __str__(self):
        return self.kind.value + (f": {self.reason}" if self.reason else "")


FIRST_KIND = TermKind(Kind.FIRST)
SECOND_KIND = TermKind(Kind.SECOND)


def _first_kind_problem(t: Term, under_op: bool = False) -> str | None:
    if isinstance(t, BinOp):
        if t.op not in ("+", "-", "*"):
            return f"operation {t.op!r} is not allowed in a term of the first kind"
        return _first_kind_problem(t.left, True) or _first_kind_problem(t.right, True)
    if under_op and isinstance(t, (Symbol, Inf, Sup)):
        return f"{t} occurs in the scope of an operation"
    return None


def _mentions_symbolic(t: Term) -> bool:
    if isinstance(t, BinOp):
        return _mentions_symbolic(t.left) or _mentions_symbolic(t.right)
    return isinstance(t, (Symbol, Inf, Sup))


def term_kind(t: Term) -> TermKind:
    problem = _first_kind_problem(t)
    if problem is None:
        return FIRST_KIND
    if isinstance(t, BinOp) and t.op == "..":
        for side in (t.left, t.right):
            inner = _first_kind_problem(side)
            if inner is not None:
                if isinstance(side, BinOp) and side.op == "..":
                    return TermKind(Kind.IRREGULAR, "nested interval")
                return TermKind(Kind.IRREGULAR, f"interval bound {side}: {inner}")
            if _mentions_symbolic(side):
                return TermKind(Kind.IRREGULAR, f"interval bound {side} mentions a symbolic constant, #inf or #sup")
        return SECOND_KIND
    return TermKind(Kind.IRREGULAR, problem)


@dataclass(frozen=True)
class Violation:
    code: str      # irregular-term | interval-in-literal | interval-comparison | unsupported-head
    where: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.where}: {self.message}"


def check_regular_rule(rule: Rule) -> list[Violation]:
    """Violations of regularity; an empty list means the rule is regular.

    Heads that contain intervals are reported as ``unsupported-head`` since
    the translation to formulas only covers interval-free heads.
    """
    out = []
    for where, t in rule_terms(rule):
        k = term_kind(t)
        if not k.regular:
            out.append(Violation("irregular-term", where, f"{t} is {k}"))
    if rule.head is not None:
        for t in rule.head.args:
            if term_kind(t).kind is Kind.SECOND:
                out.append(Violation("unsupported-head", f"head {rule.head}",
                                     f"interval {t} in the head is not supported"))
    for b in rule.body:
        if isinstance(b, Literal):
            for t in b.atom.args:
                if term_kind(t).kind is Kind.SECOND:
                    out.append(Violation("interval-in-literal", f"literal {b}",
                                         f"interval {t} inside a body literal"))
        else:
            kinds = (term_kind(b.left), term_kind(b.right))
            if all(k.regular for k in kinds) and Kind.SECOND in (k.kind for k in kinds):
                ok = (b.rel == "=" and kinds[0].kind is Kind.FIRST and kinds[1].kind is Kind.SECOND
                      and not isinstance(b.left, (Symbol, Inf, Sup)))
                if not ok:
                    out.append(Violation("interval-comparison", f"comparison {b}",
                                         "an interval may only appear as T = A..B with T an "
                                         "integer-valued term"))
    return out


def is_regular(rule: Rule) -> bool:
    return not check_regular_rule(rule)
