"""Command-line interface.

Exit codes: 0 the system was proved terminating, 1 a loop disproved
termination, 2 no conclusion, 3 the input failed to parse or load.
"""

from __future__ import annotations

import argparse
import sys

from .criteria import AnalysisConfig
from .hrs import HrsError, load
from .pfp import is_pfp, safe_subterms
from .proof import (MAYBE, NONTERMINATING, TERMINATING, ProverConfig, emit,
                    emit_dot, prove)
from .sdp import extract_sdps
from .terms import print_term

EXIT_TERMINATING = 0
EXIT_NONTERMINATING = 1
EXIT_MAYBE = 2
EXIT_INPUT_ERROR = 3

_VERDICT_EXIT = {
    TERMINATING: EXIT_TERMINATING,
    NONTERMINATING: EXIT_NONTERMINATING,
    MAYBE: EXIT_MAYBE,
}


def _parse_techniques(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    for n in names:
        if n not in ("subterm", "redpair"):
            raise argparse.ArgumentTypeError(
                f"unknown technique {n!r}; choose from subterm, redpair")
    if not names:
        raise argparse.ArgumentTypeError("technique list is empty")
    return names


def _parse_precedence(text: str) -> tuple[str, ...]:
    sep = ">" if ">" in text else ","
    names = tuple(s.strip() for s in text.split(sep) if s.strip())
    if not names:
        raise argparse.ArgumentTypeError("precedence list is empty")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoterm",
        description="termination prover for higher-order rewrite systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="analyze a .hrs file")
    p.add_argument("file", help="rewrite system in .hrs format")
    p.add_argument("--pfp", action="store_true",
                   help="report the function-passing check and stop")
    p.add_argument("--sdp", action="store_true",
                   help="report the dependency pairs and stop")
    p.add_argument("--graph-out", metavar="FILE",
                   help="write the dependency graph in DOT format")
    p.add_argument("--json", action="store_true",
                   help="emit the proof as JSON instead of text")
    p.add_argument("--disprove", nargs="?", type=int, const=100,
                   default=None, metavar="STEPS",
                   help="on failure, search for a loop of at most STEPS "
                        "rewrite steps (default 100)")
    p.add_argument("--max-pi-depth", type=int, default=3, metavar="N",
                   help="maximum projection depth for the subterm criterion "
                        "(default 3)")
    p.add_argument("--techniques", type=_parse_techniques,
                   default=("subterm", "redpair"), metavar="LIST",
                   help="comma-separated techniques to apply in order "
                        "(subterm, redpair)")
    p.add_argument("--precedence", type=_parse_precedence, default=None,
                   metavar="LIST",
                   help="fixed precedence for the path order, greatest "
                        "first, separated by '>' or ','")
    return parser


def _run_pfp_stage(path: str) -> int:
    h = load(path)
    report = is_pfp(h)
    if report.is_pfp:
        print("plain function-passing: yes")
    else:
        print("plain function-passing: no")
        for v in report.violations:
            print(f"  rule {v.rule}: subterm {print_term(v.subterm)}: "
                  f"{v.reason}")
    for rule in h.rules:
        shown = ", ".join(print_term(u) for u in safe_subterms(rule).safe)
        print(f"  safe({rule.name}) = {{{shown}}}")
    return EXIT_TERMINATING if report.is_pfp else EXIT_MAYBE


def _run_sdp_stage(path: str) -> int:
    h = load(path)
    pairs = extract_sdps(h)
    print(f"static dependency pairs ({len(pairs)}):")
    for i, pair in enumerate(pairs, start=1):
        extras = (f"   [extra variables: {', '.join(pair.extra_vars)}]"
                  if pair.extra_vars else "")
        print(f"  {i}. {pair}   [from {pair.origin_rule}]{extras}")
    return EXIT_TERMINATING


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.pfp:
            return _run_pfp_stage(args.file)
        if args.sdp:
            return _run_sdp_stage(args.file)
        config = ProverConfig(
            analysis=AnalysisConfig(techniques=args.techniques,
                                    max_pi_depth=args.max_pi_depth,
                                    precedence=args.precedence),
            disprove_steps=args.disprove)
        proof = prove(args.file, config)
        if args.graph_out:
            with open(args.graph_out, "w") as f:
                f.write(emit_dot(proof))
        sys.stdout.write(emit(proof, "json" if args.json else "text"))
        return _VERDICT_EXIT[proof.verdict.kind]
    except (HrsError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
