#!/usr/bin/env python3
"""Write the built-in brace corpus (plus small enumerations) to a directory,
then aggregate it with the report command.

Usage: python scripts/build_corpus.py OUT_DIR [--with-enumerations]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from bracelab.cli import main as cli_main
from bracelab.corpus import builtin_braces
from bracelab.enumeration import enumerate_braces
from bracelab.fileformat import save_brace


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir")
    parser.add_argument("--with-enumerations", action="store_true")
    parser.add_argument("--max-order", type=int, default=None, help="skip built-ins above this order")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, brace in enumerate(builtin_braces(max_order=args.max_order)):
        safe = brace.name.replace(" ", "_").replace(":", "-").replace("(", "").replace(")", "").replace(",", "x")
        save_brace(brace, out / f"{i:02d}-{safe}.json", construction=brace.name)
    if args.with_enumerations:
        for moduli in [(2,), (3,), (4,), (2, 2), (8,), (9,), (2, 4)]:
            res = enumerate_braces(moduli)
            for j, rep in enumerate(res.representatives):
                tag = "x".join(map(str, moduli))
                save_brace(rep, out / f"enum-{tag}-{j:03d}.json", construction="enumerate")
    print(f"wrote corpus to {out}", file=sys.stderr)
    return cli_main(["report", "--corpus", str(out)])


if __name__ == "__main__":
    raise SystemExit(main())
