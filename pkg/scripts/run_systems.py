#!/usr/bin/env python3
"""Run the prover over a directory of .hrs files and print a verdict table.

Usage: python3 scripts/run_systems.py [directory] [--disprove N]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from hoterm.proof import ProverConfig, prove


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory", nargs="?", default="fixtures",
                        help="directory containing .hrs files")
    parser.add_argument("--disprove", type=int, default=None, metavar="N",
                        help="also hunt for loops with an N-step budget")
    args = parser.parse_args()

    files = sorted(Path(args.directory).glob("*.hrs"))
    if not files:
        print(f"no .hrs files under {args.directory}", file=sys.stderr)
        return 1

    config = ProverConfig(disprove_steps=args.disprove)
    header = (f"{'system':<12} {'rules':>5} {'pfp':<4} {'pairs':>5} "
              f"{'comps':>5} {'verdict':<15} {'time':>8}")
    print(header)
    print("-" * len(header))
    for path in files:
        start = time.perf_counter()
        proof = prove(path, config)
        elapsed = time.perf_counter() - start
        print(f"{path.stem:<12} {len(proof.hrs.rules):>5} "
              f"{'yes' if proof.pfp.is_pfp else 'no':<4} "
              f"{len(proof.sdps):>5} {len(proof.components):>5} "
              f"{proof.verdict.kind:<15} {elapsed * 1000:>6.1f}ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
