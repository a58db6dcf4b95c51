#!/usr/bin/env python3
"""Rewrite tests/golden/bav0_*.json from the truth-table derivation."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from rhythmbool.anf import Basis
from rhythmbool.modular import ModulusContext
from rhythmbool.theory import enumerated_bav0
from rhythmbool.utils import atomic_write

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"

# The v-basis grows as 2^(N-1) - 1 terms, so it stops earlier.
DEFAULT_RANGES = {Basis.V: (3, 4, 5), Basis.W: (3, 4, 5, 6), Basis.Y: (3, 4, 5, 6)}


def render(basis: Basis, ns: list[int], notes: dict[str, str]) -> str:
    lines = [f"  {json.dumps(key)}: {json.dumps(value)}" for key, value in notes.items()]
    for n in ns:
        poly = enumerated_bav0(ModulusContext(n), basis)
        lines.append(f"  {json.dumps(str(n))}: {json.dumps(poly.to_json())}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def main() -> None:
    parser = argparse.ArgumentParser(description="Regenerate the golden Bav_N^0 polynomials")
    parser.add_argument("--basis", choices=[b.value for b in Basis], action="append", help="Bases to rewrite (default all)")
    parser.add_argument("--max-n", type=int, help="Largest N to include (defaults per basis)")
    parser.add_argument("--dir", type=Path, default=GOLDEN_DIR, help="Output directory")
    args = parser.parse_args()

    bases = [Basis(b) for b in args.basis] if args.basis else list(Basis)
    for basis in bases:
        ns = list(DEFAULT_RANGES[basis])
        if args.max_n:
            ns = list(range(3, args.max_n + 1))
        path = args.dir / f"bav0_{basis.value}.json"
        notes = {}
        if path.exists():
            existing = json.loads(path.read_text(encoding="utf-8"))
            notes = {key: value for key, value in existing.items() if key.startswith("_")}
        atomic_write(path, render(basis, ns, notes))
        print(f"Wrote {path} (N={ns[0]}..{ns[-1]})")


if __name__ == "__main__":
    main()
