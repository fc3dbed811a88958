"""Finite grounding and here-and-there semantics.

Sentences are grounded over a finite :class:`Domain`: generic quantifiers
range over the whole pool of precomputed terms, integer quantifiers over
the numerals of the domain's integer range.  Comparisons between ground
terms turn into ``#true``/``#false``.

HT-interpretations over ``n`` atoms are enumerated as vectors in
``{0, 1, 2}^n`` (0: atom not in J, 1: in J but not in I, 2: in I), in
lexicographic order over the sorted atom list.  Satisfaction is evaluated
with numpy over whole blocks of that enumeration.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import syntax as S
from .formulas import (
    And, Arith, Bot, Cmp, Exists, Forall, Formula, FOTerm, Imp, Obj, Or, Pred, Var, INTEGER,
    eval_comparison, free_vars,
)
from .translate import nu_program

DEFAULT_MAX_ATOMS = 16
_CHUNK = 3 ** 11


class GroundingError(ValueError):
    pass


class EnumerationLimit(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Domains

@dataclass(frozen=True)
class Domain:
    symbolic_consts: tuple = ()
    lo: int = 0
    hi: int = 0
    include_inf_sup: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty integer range {self.lo}..{self.hi}")
        if len(set(self.symbolic_consts)) != len(self.symbolic_consts):
            raise ValueError("symbolic constants must be distinct")

    @property
    def numerals(self) -> list:
        return [S.Numeral(n) for n in range(self.lo, self.hi + 1)]

    @property
    def pool(self) -> list:
        out = self.numerals + [S.Symbol(c) for c in self.symbolic_consts]
        if self.include_inf_sup:
            out = [S.Inf()] + out + [S.Sup()]
        return sorted(out, key=S.precomputed_key)

    def contains(self, c) -> bool:
        if isinstance(c, S.Numeral):
            return self.lo <= c.value <= self.hi
        if isinstance(c, S.Symbol):
            return c.name in self.symbolic_consts
        return self.include_inf_sup

    def __str__(self):
        parts = [f"ints {self.lo}..{self.hi}"]
        if self.symbolic_consts:
            parts.append("consts " + ",".join(self.symbolic_consts))
        if self.include_inf_sup:
            parts.append("#inf/#sup")
        return "; ".join(parts)

    def as_dict(self) -> dict:
        return {"ints": [self.lo, self.hi], "consts": list(self.symbolic_consts),
                "inf_sup": self.include_inf_sup}


def _program_constants(program: S.Program):
    for rule in program:
        for _, t in S.rule_terms(rule):
            stack = [t]
            while stack:
                x = stack.pop()
                if isinstance(x, S.BinOp):
                    stack.extend((x.left, x.right))
                elif S.is_precomputed(x):
                    yield x


def default_domain(*programs: S.Program, margin: int = 2) -> Domain:
    """Constants of the programs; numerals spanned by them, widened by ``margin``."""
    consts = set()
    nums = []
    infsup = False
    for p in programs:
        for c in _program_constants(p):
            if isinstance(c, S.Symbol):
                consts.add(c.name)
            elif isinstance(c, S.Numeral):
                nums.append(c.value)
            else:
                infsup = True
    lo, hi = (min(nums), max(nums)) if nums else (0, 0)
    return Domain(tuple(sorted(consts)), lo - margin, hi + margin, infsup)


# ---------------------------------------------------------------------------
# Ground formulas

@dataclass(frozen=True)
class GAtom:
    pred: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class GAnd:
    items: tuple = ()

    def __str__(self):
        if not self.items:
            return "#true"
        return " & ".join(_wrap(x) for x in self.items)


@dataclass(frozen=True)
class GOr:
    items: tuple = ()

    def __str__(self):
        if not self.items:
            return "#false"
        return " | ".join(_wrap(x) for x in self.items)


@dataclass(frozen=True)
class GImp:
    left: "GroundFormula"
    right: "GroundFormula"

    def __str__(self):
        if self.right == BOTTOM:
            return f"not {_wrap(self.left)}"
        return f"{_wrap(self.left)} -> {_wrap(self.right)}"


def _wrap(g) -> str:
    if isinstance(g, GAtom) or (isinstance(g, (GAnd, GOr)) and len(g.items) == 0):
        return str(g)
    return f"({g})"


GroundFormula = Union[GAtom, GAnd, GOr, GImp]
TOP = GAnd(())
BOTTOM = GOr(())


def atom_key(a: GAtom):
    return (a.pred, len(a.args), tuple(S.precomputed_key(x) for x in a.args))


def mk_and(items: Iterable) -> object:
    flat = []
    for x in items:
        if isinstance(x, GAnd):
            for y in x.items:
                if y not in flat:
                    flat.append(y)
        elif x == BOTTOM:
            return BOTTOM
        elif x not in flat:
            flat.append(x)
    return flat[0] if len(flat) == 1 else GAnd(tuple(flat))


def mk_or(items: Iterable) -> object:
    flat = []
    for x in items:
        if isinstance(x, GOr):
            for y in x.items:
                if y not in flat:
                    flat.append(y)
        elif x == TOP:
            return TOP
        elif x not in flat:
            flat.append(x)
    return flat[0] if len(flat) == 1 else GOr(tuple(flat))


def mk_imp(left, right) -> object:
    if left == BOTTOM or right == TOP:
        return TOP
    if left == TOP:
        return right
    return GImp(left, right)


def gneg(g) -> object:
    return mk_imp(g, BOTTOM)


def atoms_of(g) -> frozenset:
    if isinstance(g, GAtom):
        return frozenset([g])
    if isinstance(g, GImp):
        return atoms_of(g.left) | atoms_of(g.right)
    out = frozenset()
    for x in g.items:
        out |= atoms_of(x)
    return out


def sorted_atoms(atoms: Iterable) -> list:
    return sorted(set(atoms), key=atom_key)


# ---------------------------------------------------------------------------
# Grounding

def _constants(f: Formula):
    def of_term(t):
        if isinstance(t, Obj):
            yield t.value
        elif isinstance(t, Arith):
            yield from of_term(t.left)
            yield from of_term(t.right)

    if isinstance(f, Pred):
        for t in f.args:
            yield from of_term(t)
    elif isinstance(f, Cmp):
        yield from of_term(f.left)
        yield from of_term(f.right)
    elif isinstance(f, (And, Or, Imp)):
        yield from _constants(f.left)
        yield from _constants(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from _constants(f.body)


def _value(t: FOTerm, env: dict):
    if isinstance(t, Obj):
        return t.value
    if isinstance(t, Var):
        return env[t]
    a, b = _value(t.left, env).value, _value(t.right, env).value
    return S.Numeral(a + b if t.op == "+" else a - b if t.op == "-" else a * b)


def ground(f: Formula, domain: Domain, simplify: bool = True, prune: bool = True):
    """Ground a closed sentence over ``domain``.

    With ``simplify`` the connectives absorb ``#true``/``#false`` and
    conjunctions/disjunctions are flattened; without it the result mirrors
    the sentence node for node.

    With ``prune`` a quantifier instance whose ground form mentions an atom
    with an argument outside the domain (``p(3)`` over ``0..2``, produced by
    arithmetic) is left out: the result speaks only about the atoms over the
    domain.  Atoms outside the domain that do not come from a quantifier
    instance are kept.
    """
    if free_vars(f):
        names = ", ".join(sorted(v.name for v in free_vars(f)))
        raise GroundingError(f"cannot ground an open formula (free: {names})")
    for c in _constants(f):
        if not domain.contains(c):
            raise GroundingError(f"constant {c} lies outside the domain ({domain})")
    if simplify:
        a, o, i = mk_and, mk_or, mk_imp
    else:
        a, o, i = (lambda xs: GAnd(tuple(xs))), (lambda xs: GOr(tuple(xs))), GImp
    ranges = {}

    def values(sort):
        # computed on first use: closed quantifier-free input never builds the range
        if sort not in ranges:
            ranges[sort] = domain.numerals if sort is INTEGER else domain.pool
        return ranges[sort]

    def g(f, env):
        if isinstance(f, Pred):
            return GAtom(f.name, tuple(_value(t, env) for t in f.args))
        if isinstance(f, Cmp):
            ok = eval_comparison(_value(f.left, env), f.rel, _value(f.right, env))
            return TOP if ok else BOTTOM
        if isinstance(f, Bot):
            return BOTTOM
        if isinstance(f, And):
            return a([g(f.left, env), g(f.right, env)])
        if isinstance(f, Or):
            return o([g(f.left, env), g(f.right, env)])
        if isinstance(f, Imp):
            return i(g(f.left, env), g(f.right, env))
        parts = (g(f.body, {**env, f.var: r}) for r in values(f.var.sort))
        if prune:
            parts = [x for x in parts if all(_interior(at, domain) for at in atoms_of(x))]
        return a(parts) if isinstance(f, Forall) else o(parts)

    return g(f, {})


def ground_all(formulas: Iterable[Formula], domain: Domain, simplify: bool = True):
    return mk_and(ground(f, domain, simplify) for f in formulas)


def ground_program(program: S.Program, domain: Domain):
    return ground_all(nu_program(program), domain)


# ---------------------------------------------------------------------------
# Satisfaction

@dataclass(frozen=True)
class HTInterpretation:
    I: frozenset
    J: frozenset

    def __post_init__(self):
        if not self.I <= self.J:
            raise ValueError("an HT-interpretation needs I to be a subset of J")

    def __str__(self):
        def s(xs):
            return "{" + ", ".join(str(a) for a in sorted_atoms(xs)) + "}"
        return f"<{s(self.I)}, {s(self.J)}>"

    def as_dict(self) -> dict:
        return {"I": [str(a) for a in sorted_atoms(self.I)],
                "J": [str(a) for a in sorted_atoms(self.J)]}


def sat_classical(J, g) -> bool:
    if isinstance(g, GAtom):
        return g in J
    if isinstance(g, GAnd):
        return all(sat_classical(J, x) for x in g.items)
    if isinstance(g, GOr):
        return any(sat_classical(J, x) for x in g.items)
    return not sat_classical(J, g.left) or sat_classical(J, g.right)


def sat_ht(h: HTInterpretation, g) -> bool:
    if isinstance(g, GAtom):
        return g in h.I
    if isinstance(g, GAnd):
        return all(sat_ht(h, x) for x in g.items)
    if isinstance(g, GOr):
        return any(sat_ht(h, x) for x in g.items)
    return (not sat_ht(h, g.left) or sat_ht(h, g.right)) and sat_classical(h.J, g)


def is_negative(g) -> bool:
    if isinstance(g, GAtom):
        return False
    if isinstance(g, GImp):
        return is_negative(g.right)
    return all(is_negative(x) for x in g.items)


# vectorized evaluation: columns map atoms to boolean arrays (or scalars)

def _vec(g, I_cols: dict, J_cols: dict, length: int):
    """(here, there) truth arrays of ``g`` under the given columns."""
    if isinstance(g, GAtom):
        return I_cols.get(g, False), J_cols.get(g, False)
    if isinstance(g, GImp):
        h1, t1 = _vec(g.left, I_cols, J_cols, length)
        h2, t2 = _vec(g.right, I_cols, J_cols, length)
        there = ~np.asarray(t1) | t2
        return (~np.asarray(h1) | h2) & there, there
    conj = isinstance(g, GAnd)
    here = np.full(length, conj)
    there = np.full(length, conj)
    for x in g.items:
        h, t = _vec(x, I_cols, J_cols, length)
        if conj:
            here &= h
            there &= t
        else:
            here |= h
            there |= t
    return here, there


def _digits(start: int, stop: int, n: int, base: int):
    idx = np.arange(start, stop, dtype=np.int64)
    cols = [None] * n
    for k in range(n - 1, -1, -1):
        cols[k] = (idx % base).astype(np.int8)
        idx //= base
    return cols


def _ht_block(args):
    formulas, atoms, start, stop = args
    digits = _digits(start, stop, len(atoms), 3)
    I_cols = {a: d == 2 for a, d in zip(atoms, digits)}
    J_cols = {a: d >= 1 for a, d in zip(atoms, digits)}
    out = []
    for g in formulas:
        here, _ = _vec(g, I_cols, J_cols, stop - start)
        out.append(np.broadcast_to(here, (stop - start,)).copy())
    return out


def _check_size(n: int, max_atoms: int | None):
    if max_atoms is not None and n > max_atoms:
        raise EnumerationLimit(f"{n} atoms exceed the enumeration limit of {max_atoms} "
                               "(3^n HT-interpretations); raise the limit explicitly")


def ht_tables(formulas: Sequence, atoms: Sequence, max_atoms: int | None = DEFAULT_MAX_ATOMS,
              workers: int = 1) -> list:
    """Satisfaction of each formula at every HT-interpretation over ``atoms``, in enumeration order."""
    atoms = list(atoms)
    _check_size(len(atoms), max_atoms)
    total = 3 ** len(atoms)
    jobs = [(list(formulas), atoms, s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_ht_block, jobs))
    else:
        parts = [_ht_block(j) for j in jobs]
    return [np.concatenate([p[i] for p in parts]) for i in range(len(formulas))]


def decode(index: int, atoms: Sequence) -> HTInterpretation:
    I, J = set(), set()
    for a in reversed(atoms):
        d = index % 3
        index //= 3
        if d >= 1:
            J.add(a)
        if d == 2:
            I.add(a)
    return HTInterpretation(frozenset(I), frozenset(J))


def ht_models(g, atoms: Sequence | None = None, max_atoms: int | None = DEFAULT_MAX_ATOMS,
              workers: int = 1) -> list:
    atoms = sorted_atoms(atoms_of(g) if atoms is None else atoms)
    (table,) = ht_tables([g], atoms, max_atoms, workers)
    return [decode(int(i), atoms) for i in np.flatnonzero(table)]


def _classical_table(g, atoms: Sequence, fixed_true=frozenset()):
    """Classical truth of ``g`` at every subset of ``atoms`` (bit order as for HT)."""
    n = len(atoms)
    digits = _digits(0, 2 ** n, n, 2)
    cols = {a: d == 1 for a, d in zip(atoms, digits)}
    for a in fixed_true:
        cols[a] = True
    _, there = _vec(g, cols, cols, 2 ** n)
    return np.broadcast_to(there, (2 ** n,))


def _subsets(index: int, atoms: Sequence) -> frozenset:
    out = set()
    for a in reversed(atoms):
        if index & 1:
            out.add(a)
        index >>= 1
    return frozenset(out)


def is_tautological(g, max_atoms: int | None = 24) -> bool:
    atoms = sorted_atoms(atoms_of(g))
    _check_size(len(atoms), max_atoms)
    return bool(_classical_table(g, atoms).all())


def is_stable(g, J: frozenset, max_atoms: int | None = 24) -> bool:
    """``J`` is an equilibrium model: <J,J> satisfies ``g`` and no <I,J> with I a proper subset does."""
    if not sat_classical(J, g):
        return False
    inside = sorted_atoms(J)
    _check_size(len(inside), max_atoms)
    n = len(inside)
    digits = _digits(0, 2 ** n, n, 2)
    I_cols = {a: d == 1 for a, d in zip(inside, digits)}
    J_cols = {a: True for a in J}
    here, _ = _vec(g, I_cols, J_cols, 2 ** n)
    here = np.broadcast_to(here, (2 ** n,))
    # the last index is I = J itself
    return not here[:-1].any()


def stable_models(g, atoms: Iterable | None = None, max_atoms: int | None = DEFAULT_MAX_ATOMS) -> list:
    """All stable (equilibrium) models of ``g`` over the atom universe, sorted."""
    atoms = sorted_atoms(atoms_of(g) if atoms is None else atoms)
    missing = atoms_of(g) - set(atoms)
    if missing:
        raise ValueError(f"atom universe misses {', '.join(map(str, sorted_atoms(missing)))}")
    _check_size(len(atoms), max_atoms)
    table = _classical_table(g, atoms)
    out = []
    for i in np.flatnonzero(table):
        J = _subsets(int(i), atoms)
        if is_stable(g, J, None):
            out.append(J)
    return out


# ---------------------------------------------------------------------------
# Strong equivalence over a finite domain

@dataclass
class SEResult:
    domain: Domain
    equivalent: bool
    witness: HTInterpretation | None = None
    side: int | None = None             # which program the witness satisfies
    confirmed: bool | None = None       # stable-model confirmation of the witness
    context: object = None              # ground context used for the confirmation
    stable_in: tuple = ()               # programs (1/2) for which J is stable under the context
    atoms: int = 0
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.equivalent:
            return f"equivalent over domain ({self.domain})"
        if self.confirmed:
            return "NOT strongly equivalent"
        return f"differs over domain ({self.domain}) (inconclusive for full domain)"

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict, "equivalent_over_domain": self.equivalent,
               "domain": self.domain.as_dict(), "atoms": self.atoms}
        if self.witness is not None:
            out["witness"] = {**self.witness.as_dict(), "satisfies_program": self.side}
            out["validation"] = {"confirmed": self.confirmed,
                                 "context": str(self.context),
                                 "J_stable_for_programs": list(self.stable_in)}
        return out


def _conjuncts(g) -> list:
    return list(g.items) if isinstance(g, GAnd) else [g]


def _components(g1, g2) -> list:
    """Group the conjuncts of both formulas by shared atoms.

    Returns ``(atoms, part1, part2)`` triples ordered by their least atom;
    atom-free parts come first.
    """
    items = [(1, c) for c in _conjuncts(g1)] + [(2, c) for c in _conjuncts(g2)]
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for _, c in items:
        ats = sorted_atoms(atoms_of(c))
        for a in ats:
            parent.setdefault(a, a)
        for a, b in zip(ats, ats[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for side, c in items:
        ats = atoms_of(c)
        root = find(next(iter(ats))) if ats else None
        groups.setdefault(root, ([], [], []))[side].append(c)
    for a in parent:
        groups.setdefault(find(a), ([], [], []))[0].append(a)
    out = []
    for root, (ats, p1, p2) in groups.items():
        out.append((sorted_atoms(ats), mk_and(p1), mk_and(p2)))
    out.sort(key=lambda c: (len(c[0]) > 0, atom_key(c[0][0]) if c[0] else ()))
    return out


def _first(table) -> int | None:
    hits = np.flatnonzero(table)
    return int(hits[0]) if len(hits) else None


def ht_equivalence(g1, g2, max_atoms: int | None = DEFAULT_MAX_ATOMS, workers: int = 1):
    """Compare the HT-models of two ground formulas.

    Returns None if they agree, otherwise ``(witness, side)`` where the
    witness satisfies formula ``side`` and not the other one.
    """
    comps = []
    for atoms, p1, p2 in _components(g1, g2):
        t1, t2 = ht_tables([p1, p2], atoms, max_atoms, workers)
        comps.append((atoms, t1, t2))
    empty1 = any(not t1.any() for _, t1, _ in comps)
    empty2 = any(not t2.any() for _, _, t2 in comps)
    if empty1 and empty2:
        return None
    if empty1 or empty2:
        side = 2 if empty1 else 1
        chosen = {}
    else:
        side, chosen = None, {}
        for k, (atoms, t1, t2) in enumerate(comps):
            d = _first(t1 != t2)
            if d is not None:
                side = 1 if t1[d] else 2
                chosen[k] = d
                break
        if side is None:
            return None
    I, J = set(), set()
    for k, (atoms, t1, t2) in enumerate(comps):
        d = chosen.get(k)
        if d is None:
            d = _first(t1 if side == 1 else t2)
        h = decode(d, atoms)
        I |= h.I
        J |= h.J
    return HTInterpretation(frozenset(I), frozenset(J)), side


def witness_context(g1, g2, h: HTInterpretation):
    """Ground context separating the stable models of ``g1`` and ``g2`` at ``h.J``.

    If J itself tells the formulas apart, the facts J suffice.  Otherwise
    the facts I plus implications between the atoms of J \\ I make J stable
    for exactly the formula that <I, J> falsifies.
    """
    J = sorted_atoms(h.J)
    if sat_classical(h.J, g1) != sat_classical(h.J, g2):
        return mk_and(J)
    gap = sorted_atoms(h.J - h.I)
    links = [GImp(p, q) for p, q in itertools.permutations(gap, 2)]
    return mk_and(sorted_atoms(h.I) + links)


def confirm_witness(g1, g2, h: HTInterpretation, max_atoms: int | None = 24):
    """Brute-force check that the witness yields different stable models.

    Returns ``(confirmed, context, stable_in)``.
    """
    ctx = witness_context(g1, g2, h)
    stable_in = tuple(k for k, g in ((1, g1), (2, g2)) if is_stable(mk_and([g, ctx]), h.J, max_atoms))
    return len(stable_in) == 1, ctx, stable_in


def widen(domain: Domain, by: int) -> Domain:
    return Domain(domain.symbolic_consts, domain.lo - by, domain.hi + by, domain.include_inf_sup)


def restrict(g, keep: frozenset):
    """``g`` with every atom outside ``keep`` replaced by ``#false``."""
    if isinstance(g, GAtom):
        return g if g in keep else BOTTOM
    if isinstance(g, GImp):
        return mk_imp(restrict(g.left, keep), restrict(g.right, keep))
    parts = (restrict(x, keep) for x in g.items)
    return mk_and(parts) if isinstance(g, GAnd) else mk_or(parts)


def _interior(a: GAtom, domain: Domain) -> bool:
    return all(domain.contains(x) for x in a.args)


def check_se(p1: S.Program, p2: S.Program, domain: Domain | None = None,
             max_atoms: int | None = DEFAULT_MAX_ATOMS, workers: int = 1,
             margin: int | None = None) -> SEResult:
    """Compare two programs by their HT-models over a finite domain.

    A disagreement over ``domain`` may come from rule instances cut off at
    the edge of the integer range.  Before calling the programs
    non-equivalent, the search is repeated with both programs grounded over
    a domain widened by ``margin`` while the witness may only use atoms
    whose arguments lie in ``domain``; the witness found there must then
    pass the stable-model confirmation.
    """
    domain = domain or default_domain(p1, p2)
    g1, g2 = ground_program(p1, domain), ground_program(p2, domain)
    n = len(atoms_of(g1) | atoms_of(g2))
    found = ht_equivalence(g1, g2, max_atoms, workers)
    if found is None:
        return SEResult(domain, True, atoms=n)
    h, side = found
    if margin is None:
        nums = [abs(c.value) for p in (p1, p2) for c in _program_constants(p)
                if isinstance(c, S.Numeral)]
        margin = 2 + max(nums, default=0)
    wide = widen(domain, margin)
    w1, w2 = ground_program(p1, wide), ground_program(p2, wide)
    keep = frozenset(a for a in atoms_of(w1) | atoms_of(w2) if _interior(a, domain))
    inner = ht_equivalence(restrict(w1, keep), restrict(w2, keep), max_atoms, workers)
    if inner is None:
        return SEResult(domain, False, h, side, False, atoms=n, notes=[
            f"every disagreement disappears when grounding over ({wide}); "
            "it stems from instances cut off at the domain boundary"])
    h, side = inner
    try:
        ok, ctx, stable_in = confirm_witness(w1, w2, h)
    except EnumerationLimit as e:
        return SEResult(domain, False, h, side, False, atoms=n, notes=[str(e)])
    return SEResult(domain, False, h, side, ok, ctx, stable_in, atoms=n)
