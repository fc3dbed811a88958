"""Bundled example programs, proof scripts and the cases reproduced by ``demo``."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .ground import Domain
from .kernel import ProofScript, load_script
from .syntax import Program, parse_program


def _data():
    return resources.files("gringo_se") / "data"


def program_names() -> list[str]:
    return sorted(p.name[:-3] for p in (_data() / "programs").iterdir() if p.name.endswith(".lp"))


# an example named without a side refers to its left-hand program
ALIASES = {"ex1": "ex1_left", "ex3": "ex3_left", "ex4": "ex4_left"}


def program_text(name: str) -> str:
    return (_data() / "programs" / f"{name}.lp").read_text(encoding="utf-8")


def load_program(name: str) -> Program:
    return parse_program(program_text(name))


def proof_path(name: str):
    return _data() / "proofs" / f"{name}.json"


def load_proof(name: str) -> ProofScript:
    return load_script(proof_path(name).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class ProofTask:
    name: str
    left: str
    right: str
    forward: str      # proof of the right translation from the left one
    backward: str
    certified: bool   # expected outcome


TASKS = (
    ProofTask("ex1", "ex1_left", "ex1_right", "ex1_left_to_right", "ex1_right_to_left", True),
    ProofTask("ex2", "ex2", "ex2_first", "ex2_to_first", "ex2_first_to_program", True),
    ProofTask("ex3", "ex3_left", "ex3_right", "ex3_left_to_right", "ex3_right_to_left", True),
    ProofTask("ex4", "ex4_left", "ex4_right", "ex4_left_to_right", "ex4_right_to_left", True),
    ProofTask("pi1 vs pi2", "pi1", "pi2", "pi1_to_pi2_partial", "pi2_to_pi1", False),
)


@dataclass(frozen=True)
class OracleCase:
    name: str
    left: str
    right: str
    domain: Domain | None     # None: default domain
    equivalent: bool


ORACLE_CASES = (
    OracleCase("rule6 vs rule7", "rule6", "rule7", Domain((), 1, 2), False),
    OracleCase("ex2 vs its second rule", "ex2", "ex2_second", Domain(("a",), 0, 2), False),
    OracleCase("ex2 vs its first rule", "ex2", "ex2_first", Domain(("a",), 0, 2), True),
    OracleCase("ex1", "ex1_left", "ex1_right", None, True),
    OracleCase("ex3", "ex3_left", "ex3_right", None, True),
    OracleCase("ex4", "ex4_left", "ex4_right", None, True),
    OracleCase("pi1 vs pi2", "pi1", "pi2", Domain((), 0, 3), True),
)


# Displayed translations, one entry per case; a case may span several programs.
GOLDEN = (
    ("rule6", (("rule6", ("forall int M, int N (1 <= M <= 2 & 1 <= N <= 2 -> p(M, N))",)),)),
    ("rule7", (("rule7", ("forall X, int N (X = N & 1 <= N <= 2 -> p(X, N))",)),)),
    ("ex1 choice rule", (("ex1_left", ("forall int N (p(N + 1) -> q(N) | not q(N))",)),)),
    ("ex1 double negation", (("ex1_right", ("forall int N (p(N + 1) & not not q(N) -> q(N))",)),)),
    ("ex2", (("ex2", ("forall X (p(X) -> q(X))", "forall int N (p(N + 1) -> q(N + 1))")),)),
    ("ex3 two rules", (("ex3_left", ("forall X, Y (p(X, Y) & X < Y -> q(X, Y) | not q(X, Y))",
                                           "forall X (p(X, X) -> q(X, X) | not q(X, X))")),)),
    ("ex3 one rule", (("ex3_right", ("forall X, Y (p(X, Y) & X <= Y -> q(X, Y) | not q(X, Y))",)),)),
    ("ex4 ordered", (("ex4_left", ("forall int M, int N (p(M) & p(N) & M <= N -> q(M + N))",)),)),
    ("ex4 unordered", (("ex4_right", ("forall int M, int N (p(M) & p(N) -> q(M + N))",)),)),
    ("pi1 and pi2", (("pi1", ("p(0)", "forall int N (p(N) -> p(N + 1))")),
                     ("pi2", ("p(0)", "forall int N (p(N) -> p(N + 1))", "forall int N (N + 1 > 0 -> p(N))")))),
)
