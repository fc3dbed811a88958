"""Regenerate the bundled proof scripts under src/gringo_se/data/proofs/."""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from gringo_se.kernel import check_proof
from gringo_se.proofs import SCRIPTS

OUT = Path(__file__).resolve().parents[1] / "src" / "gringo_se" / "data" / "proofs"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, make in SCRIPTS.items():
        script = make()
        verdict = check_proof(script)
        path = args.out / f"{name}.json"
        path.write_text(json.dumps(script.to_json(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        print(f"{path.name:28s} {len(script.lines):3d} lines  {verdict}")


if __name__ == "__main__":
    main()
