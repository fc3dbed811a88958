"""Command-line front end: ``gringo-se <command> ...``.

Exit status: 0 success / accepted / equivalent, 1 rejected / not equivalent,
2 usage, parse or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields, is_dataclass
from pathlib import Path

from . import corpus
from .formulas import parse_formula, same_sentence, show
from .ground import (
    DEFAULT_MAX_ATOMS, Domain, EnumerationLimit, GroundingError, atoms_of,
    check_se, default_domain, ground_program, ht_models, sorted_atoms, stable_models,
)
from .kernel import MalformedProof, check_equivalence_task, check_proof, load_script
from .syntax import ParseError, Program, check_regular_rule, parse_program
from .translate import TranslationError, nu_program


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers

def _resolve(arg: str, kind: str) -> str:
    """File contents, falling back to the bundled corpus by file stem."""
    path = Path(arg)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    stem = path.stem
    if kind == "program":
        stem = corpus.ALIASES.get(stem, stem)
    try:
        if kind == "program" and stem in corpus.program_names():
            return corpus.program_text(stem)
        if kind == "proof" and corpus.proof_path(stem).is_file():
            return corpus.proof_path(stem).read_text(encoding="utf-8")
    except FileNotFoundError:
        pass
    raise UsageError(f"no such file: {arg}")


def _program(arg: str) -> Program:
    return parse_program(_resolve(arg, "program"))


def _int_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _domain(args, programs) -> Domain:
    base = default_domain(*programs)
    lo, hi = args.ints if args.ints else (base.lo, base.hi)
    consts = tuple(c for c in (args.consts or "").split(",") if c.strip())
    consts = tuple(dict.fromkeys([c.strip() for c in consts] + list(base.symbolic_consts)))
    return Domain(consts, lo, hi, args.inf_sup or base.include_inf_sup)


def _max_atoms(args):
    return None if args.max_atoms == 0 else args.max_atoms


def _emit(args, text_lines, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def _ast(x):
    if is_dataclass(x):
        out = {"type": type(x).__name__}
        for f in fields(x):
            out[f.name] = _ast(getattr(x, f.name))
        return out
    if isinstance(x, (tuple, list)):
        return [_ast(y) for y in x]
    return x


def _atoms(xs) -> list[str]:
    return [str(a) for a in sorted_atoms(xs)]


# ---------------------------------------------------------------------------
# commands

def cmd_parse(args) -> int:
    prog = _program(args.program)
    lines, data = [], []
    for i, r in enumerate(prog, 1):
        problems = check_regular_rule(r)
        status = "regular" if not problems else "; ".join(p.message for p in problems)
        lines.append(f"{r}    % {status}")
        data.append({"rule": str(r), "regular": not problems, "ast": _ast(r),
                     "violations": [{"code": p.code, "where": p.where, "message": p.message}
                                    for p in problems]})
    _emit(args, lines, {"rules": data})
    return 0


def cmd_translate(args) -> int:
    fs = nu_program(_program(args.program))
    _emit(args, [show(f) for f in fs], {"formulas": [show(f) for f in fs]})
    return 0


def cmd_check_proof(args) -> int:
    script = load_script(_resolve(args.script, "proof"))
    if args.goal:
        from .kernel import Sequent
        script.goal = Sequent((), parse_formula(args.goal, script.declarations, strict=True))
    v = check_proof(script, int_mode=args.int_mode, trust_arith=args.trust_arith)
    lines = [f"{s.id:>4} {'ok' if s.ok else 'FAIL'}  {s.reason}".rstrip() for s in v.lines] if args.verbose else []
    lines.append(str(v))
    _emit(args, lines, v.as_dict())
    return 0 if v.accepted else 1


def cmd_check_se_proofs(args) -> int:
    p1, p2 = _program(args.program1), _program(args.program2)
    s12 = load_script(_resolve(args.proof12, "proof"))
    s21 = load_script(_resolve(args.proof21, "proof"))
    r = check_equivalence_task(p1, p2, s12, s21, int_mode=args.int_mode, trust_arith=args.trust_arith)
    tail = " (uses trusted arithmetic)" if r.accepted and r.uses_trusted_arithmetic else ""
    data = {"accepted": r.accepted, "message": r.message, "uses_trusted_arithmetic": r.uses_trusted_arithmetic}
    for name, d in (("forward", r.forward), ("backward", r.backward)):
        data[name] = {"accepted": d.accepted, "proof": d.verdict.as_dict(), "missing": [show(m) for m in d.missing]}
    _emit(args, [r.message + tail], data)
    return 0 if r.accepted else 1


def cmd_ground(args) -> int:
    prog = _program(args.program)
    d = _domain(args, [prog])
    g = ground_program(prog, d)
    _emit(args, [f"% domain: {d}", str(g)], {"domain": d.as_dict(), "formula": str(g),
                                             "atoms": _atoms(atoms_of(g))})
    return 0


def cmd_ht_models(args) -> int:
    prog = _program(args.program)
    d = _domain(args, [prog])
    g = ground_program(prog, d)
    models = ht_models(g, max_atoms=_max_atoms(args), workers=args.workers)
    _emit(args, [f"% domain: {d}; {len(models)} HT-models"] + [str(h) for h in models],
          {"domain": d.as_dict(), "atoms": _atoms(atoms_of(g)),
           "models": [h.as_dict() for h in models]})
    return 0


def cmd_stable_models(args) -> int:
    prog = _program(args.program)
    d = _domain(args, [prog])
    g = ground_program(prog, d)
    models = stable_models(g, max_atoms=_max_atoms(args))
    _emit(args, [f"% domain: {d}; {len(models)} stable models"] + ["{" + ", ".join(_atoms(m)) + "}" for m in models],
          {"domain": d.as_dict(), "stable_models": [_atoms(m) for m in models]})
    return 0


def _se_lines(r) -> list[str]:
    out = [r.verdict]
    if r.witness is not None:
        out.append(f"witness: {r.witness} satisfies program {r.side} only")
        if r.confirmed:
            out.append(f"confirmed: with context {r.context}, J is stable for program(s) "
                       f"{', '.join(map(str, r.stable_in))} only")
    out.extend(f"note: {n}" for n in r.notes)
    return out


def cmd_check_se(args) -> int:
    p1, p2 = _program(args.program1), _program(args.program2)
    d = _domain(args, [p1, p2])
    r = check_se(p1, p2, d, max_atoms=_max_atoms(args), workers=args.workers)
    _emit(args, _se_lines(r), r.as_dict())
    return 0 if r.equivalent else 1


def cmd_demo(args) -> int:
    results = []

    def report(ok: bool, label: str, detail: str = ""):
        results.append(ok)
        print(f"{'PASS' if ok else 'FAIL'}  {label}" + (f": {detail}" if detail else ""))

    for name, parts in corpus.GOLDEN:
        got, ok = [], True
        for prog, expected in parts:
            fs = nu_program(corpus.load_program(prog))
            got.extend(show(f) for f in fs)
            ok &= len(fs) == len(expected) and all(
                same_sentence(f, parse_formula(e)) for f, e in zip(fs, expected))
        report(ok, f"translate {name}", " ; ".join(got))

    v = check_proof(corpus.load_proof("fig2"), int_mode=True)
    report(v.accepted, "intuitionistic proof (p -> q | not q) -> (p & not not q -> q) in Int mode", str(v))
    v = check_proof(corpus.load_proof("ex2_shift"))
    report(v.accepted, "forall N (p(N) -> q(N)) from the second rule of ex2", str(v))

    for t in corpus.TASKS:
        r = check_equivalence_task(corpus.load_program(t.left), corpus.load_program(t.right),
                                   corpus.load_proof(t.forward), corpus.load_proof(t.backward))
        report(r.accepted == t.certified, f"proofs {t.name}", r.message)

    for c in corpus.ORACLE_CASES:
        p1, p2 = corpus.load_program(c.left), corpus.load_program(c.right)
        r = check_se(p1, p2, c.domain, workers=args.workers)
        ok = r.equivalent if c.equivalent else (not r.equivalent and bool(r.confirmed))
        detail = r.verdict + (f", witness {r.witness}" if r.witness is not None else "")
        report(ok, f"oracle {c.name}", detail)

    print(f"{sum(results)}/{len(results)} cases passed")
    return 0 if all(results) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gringo-se",
                                 description="Strong equivalence tools for mini-gringo programs.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, domain=False, proofs=False, enum=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if domain:
            p.add_argument("--ints", type=_int_range, metavar="LO..HI", help="integer range of the domain")
            p.add_argument("--consts", metavar="LIST", help="comma-separated symbolic constants")
            p.add_argument("--inf-sup", action="store_true", help="include #inf and #sup")
        if enum:
            p.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS, metavar="N",
                           help=f"refuse to enumerate beyond N atoms (default {DEFAULT_MAX_ATOMS}, 0: no limit)")
            p.add_argument("--workers", type=int, default=1, help="processes for HT enumeration")
        if proofs:
            p.add_argument("--int-mode", action="store_true", help="disable the Hosoi and B-D axioms")
            p.add_argument("--trust-arith", action="store_true",
                           help="accept groupD-trusted lines (reported in the verdict)")
        return p

    p = common(sub.add_parser("parse", help="parse a program and report regularity"))
    p.add_argument("program")
    p.set_defaults(run=cmd_parse)
    p = common(sub.add_parser("translate", help="print the translation of a program"))
    p.add_argument("program")
    p.set_defaults(run=cmd_translate)
    p = common(sub.add_parser("check-proof", help="check a proof script"), proofs=True)
    p.add_argument("script")
    p.add_argument("--goal", help="require the last line to be this sentence")
    p.add_argument("-v", "--verbose", action="store_true", help="print the status of every line")
    p.set_defaults(run=cmd_check_proof)
    p = common(sub.add_parser("check-se-proofs", help="certify strong equivalence by two proof scripts"),
               proofs=True)
    for name in ("program1", "program2", "proof12", "proof21"):
        p.add_argument(name)
    p.set_defaults(run=cmd_check_se_proofs)
    for name, fn, helptext in (("ground", cmd_ground, "ground a program over a finite domain"),
                               ("ht-models", cmd_ht_models, "list the HT-models of the grounded program"),
                               ("stable-models", cmd_stable_models, "list the stable models of the grounded program")):
        p = common(sub.add_parser(name, help=helptext), domain=True, enum=name != "ground")
        p.add_argument("program")
        p.set_defaults(run=fn)
    p = common(sub.add_parser("check-se", help="compare two programs by brute force over a finite domain"),
               domain=True, enum=True)
    p.add_argument("program1")
    p.add_argument("program2")
    p.set_defaults(run=cmd_check_se)
    p = sub.add_parser("demo", help="reproduce the bundled examples")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_demo)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.run(args)
    except (UsageError, ParseError, TranslationError, MalformedProof, GroundingError,
            EnumerationLimit, ValueError) as e:
        print(f"gringo-se {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
