"""Run the brute-force comparison of each bundled pair over growing integer ranges.

    python3 scripts/domain_sweep.py [--steps 4] [--workers 1]

Each pair starts from its default domain; every step adds one integer above it.

Prints one row per (pair, range): verdict, number of ground atoms, seconds.
"""
from __future__ import annotations

import argparse
import time

from gringo_se.corpus import ORACLE_CASES, load_program
from gringo_se.ground import Domain, EnumerationLimit, check_se, default_domain


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=4)
    ap.add_argument("--max-atoms", type=int, default=20)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    print(f"{'pair':28} {'ints':>7} {'atoms':>5} {'secs':>6}  verdict")
    for c in ORACLE_CASES:
        p1, p2 = load_program(c.left), load_program(c.right)
        base = c.domain or default_domain(p1, p2)
        for extra in range(args.steps):
            d = Domain(base.symbolic_consts, base.lo, base.hi + extra, base.include_inf_sup)
            t = time.perf_counter()
            try:
                r = check_se(p1, p2, d, max_atoms=args.max_atoms, workers=args.workers)
                verdict, atoms = r.verdict, r.atoms
            except EnumerationLimit as e:
                verdict, atoms = f"skipped ({e})", "-"
            print(f"{c.name:28} {f'{d.lo}..{d.hi}':>7} {atoms:>5} {time.perf_counter() - t:6.2f}  {verdict}")


if __name__ == "__main__":
    main()
