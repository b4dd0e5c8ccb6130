"""End-to-end proof pipeline and proof emission.

The pipeline parses a system, gates on the function-passing check, extracts
the marked pairs, builds the graph, and discharges every recursion component.
A full discharge yields TERMINATING.  Otherwise the verdict is MAYBE with the
blocking reason, unless loop search is enabled and finds a concrete cycle, in
which case the verdict is NONTERMINATING with a replayable trace.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .criteria import (AnalysisConfig, ComponentFailure, ComponentProof,
                       analyze_component)
from .graph import (DependencyGraph, RecursionComponent, build_graph,
                    recursion_components, to_dot)
from .hrs import Hrs, load, parse
from .pfp import PfpReport, is_pfp, safe_subterms
from .rewriting import LoopFound, find_loop
from .sdp import DependencyPair, extract_sdps
from .terms import format_position, print_term, top

SCHEMA_VERSION = 1

TERMINATING = "TERMINATING"
NONTERMINATING = "NONTERMINATING"
MAYBE = "MAYBE"

FINITENESS_NOTE = ("the system is finite, so its dependency graph is finite "
                   "and every infinite chain eventually stays inside one "
                   "recursion component")


@dataclass(frozen=True)
class ProverConfig:
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    disprove_steps: int | None = None


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: str | None = None
    loop: LoopFound | None = None


@dataclass(frozen=True)
class ProofObject:
    source_name: str
    input_digest: str
    hrs: Hrs
    pfp: PfpReport
    sdps: tuple[DependencyPair, ...]
    graph: DependencyGraph
    components: tuple[RecursionComponent, ...]
    component_proofs: dict[RecursionComponent,
                           ComponentProof | ComponentFailure]
    finiteness: str
    verdict: Verdict


def prove_text(text: str, config: ProverConfig = ProverConfig(),
               source_name: str = "<string>") -> ProofObject:
    digest = hashlib.sha256(text.encode()).hexdigest()
    h = parse(text)
    return _prove(h, digest, config, source_name)


def prove(path: str, config: ProverConfig = ProverConfig()) -> ProofObject:
    with open(path, "rb") as f:
        digest = hashlib.sha256(f.read()).hexdigest()
    return _prove(load(path), digest, config, str(path))


def _prove(h: Hrs, digest: str, config: ProverConfig,
           source_name: str) -> ProofObject:
    pfp = is_pfp(h)
    sdps = extract_sdps(h)
    graph = build_graph(sdps)
    components = recursion_components(graph)
    proofs: dict[RecursionComponent, ComponentProof | ComponentFailure] = {}
    if pfp.is_pfp:
        for c in components:
            proofs[c] = analyze_component(h, c, config.analysis)

    verdict = _conclude(h, pfp, proofs, config)
    return ProofObject(source_name, digest, h, pfp, sdps, graph, components,
                       proofs, FINITENESS_NOTE, verdict)


def _conclude(h: Hrs, pfp: PfpReport,
              proofs: dict[RecursionComponent,
                           ComponentProof | ComponentFailure],
              config: ProverConfig) -> Verdict:
    if not pfp.is_pfp:
        reason = "not plain function-passing"
    else:
        blocked = [c for c, p in proofs.items()
                   if isinstance(p, ComponentFailure)]
        if not blocked:
            return Verdict(TERMINATING)
        labels = ", ".join(_component_label(c) for c in blocked)
        reason = f"undischarged recursion component(s): {labels}"
    if config.disprove_steps is not None:
        found = find_loop(h, max_steps=config.disprove_steps)
        if found is not None:
            return Verdict(NONTERMINATING, loop=found)
        reason += "; loop search found nothing"
    return Verdict(MAYBE, reason)


def _component_label(c: RecursionComponent) -> str:
    return "{" + ", ".join(str(i + 1) for i in c.indices) + "}"


# ---------------------------------------------------------------------------
# emission


def emit_text(proof: ProofObject) -> str:
    h = proof.hrs
    out: list[str] = []
    out.append(f"input: {proof.source_name}")
    out.append(f"sha256: {proof.input_digest}")
    out.append("")
    out.append(f"system: {len(h.rules)} rule(s); "
               f"defined = {{{', '.join(sorted(h.defined))}}}; "
               f"constructors = {{{', '.join(sorted(h.constructors))}}}")
    out.append("")
    if proof.pfp.is_pfp:
        out.append("plain function-passing: yes")
        for rule in h.rules:
            safe = safe_subterms(rule)
            shown = ", ".join(print_term(u) for u in safe.safe)
            out.append(f"  safe({rule.name}) = {{{shown}}}")
    else:
        out.append("plain function-passing: no")
        for v in proof.pfp.violations:
            out.append(f"  rule {v.rule}: subterm "
                       f"{print_term(v.subterm)}: {v.reason}")
    out.append("")
    out.append(f"static dependency pairs ({len(proof.sdps)}):")
    for i, p in enumerate(proof.sdps, start=1):
        extras = (f"   [extra variables: {', '.join(p.extra_vars)}]"
                  if p.extra_vars else "")
        out.append(f"  {i}. {p}   [from {p.origin_rule}]{extras}")
    out.append("")
    arcs = sorted(proof.graph.arcs)
    shown = ", ".join(f"{a + 1}->{b + 1}" for a, b in arcs)
    out.append(f"static dependency graph: {len(arcs)} arc(s): {shown}")
    out.append("")
    out.append(f"recursion components ({len(proof.components)}):")
    for c in proof.components:
        out.append(f"  {_component_label(c)}")
    for c in proof.components:
        out.append("")
        result = proof.component_proofs.get(c)
        out.append(f"component {_component_label(c)}:")
        if result is None:
            out.append("  not analyzed: the function-passing gate failed")
        elif isinstance(result, ComponentProof):
            for step in result.steps:
                strict = ", ".join(str(p) for p in step.removed)
                out.append(f"  {step.technique}: {step.witness}")
                out.append(f"    strict: {strict}")
                if step.remaining:
                    out.append(f"    remaining pairs: {len(step.remaining)}")
                else:
                    out.append("    remaining pairs: none")
            out.append("  discharged")
        else:
            for reason in result.reasons:
                out.append(f"  {reason}")
            out.append("  NOT discharged")
    out.append("")
    out.append(f"note: {proof.finiteness}")
    out.append("")
    if proof.verdict.kind == NONTERMINATING and proof.verdict.loop:
        loop = proof.verdict.loop
        out.append(f"loop of length {len(loop.trace)} from "
                   f"{print_term(loop.start)}:")
        for step in loop.trace:
            out.append(f"  -> {print_term(step.result)}   "
                       f"[{step.rule}, position {format_position(step.position)}]")
        out.append("")
    if proof.verdict.reason:
        out.append(f"verdict: {proof.verdict.kind} ({proof.verdict.reason})")
    else:
        out.append(f"verdict: {proof.verdict.kind}")
    out.append("")
    return "\n".join(out)


def emit_json(proof: ProofObject) -> str:
    pairs = [{
        "index": i + 1,
        "lhs": print_term(p.lhs),
        "rhs": print_term(p.rhs),
        "origin_rule": p.origin_rule,
        "extra_vars": list(p.extra_vars),
    } for i, p in enumerate(proof.sdps)]
    comps = [{
        "pairs": [i + 1 for i in c.indices],
    } for c in proof.components]
    comp_proofs = []
    for c in proof.components:
        result = proof.component_proofs.get(c)
        entry: dict = {"component": [i + 1 for i in c.indices]}
        if result is None:
            entry["discharged"] = False
            entry["reasons"] = ["not analyzed: the function-passing gate "
                                "failed"]
        elif isinstance(result, ComponentProof):
            entry["discharged"] = True
            entry["steps"] = [{
                "technique": s.technique,
                "witness": s.witness,
                "strict": [str(p) for p in s.removed],
                "remaining": [str(p) for p in s.remaining],
            } for s in result.steps]
        else:
            entry["discharged"] = False
            entry["reasons"] = list(result.reasons)
        comp_proofs.append(entry)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {"source": proof.source_name,
                  "sha256": proof.input_digest},
        "pfp": {
            "is_pfp": proof.pfp.is_pfp,
            "violations": [{
                "rule": v.rule,
                "subterm": print_term(v.subterm),
                "reason": v.reason,
            } for v in proof.pfp.violations],
        },
        "sdp_count": len(proof.sdps),
        "sdps": pairs,
        "graph": {"arcs": [[a + 1, b + 1]
                           for a, b in sorted(proof.graph.arcs)]},
        "component_count": len(proof.components),
        "components": comps,
        "component_proofs": comp_proofs,
        "finiteness": proof.finiteness,
        "verdict": proof.verdict.kind,
        "reason": proof.verdict.reason,
        "loop": _loop_json(proof.verdict.loop),
    }
    return json.dumps(doc, indent=2) + "\n"


def _loop_json(loop: LoopFound | None) -> dict | None:
    if loop is None:
        return None
    return {
        "start": print_term(loop.start),
        "steps": [{
            "rule": s.rule,
            "position": list(s.position),
            "result": print_term(s.result),
        } for s in loop.trace],
    }


def emit_dot(proof: ProofObject) -> str:
    return to_dot(proof.graph)


def emit(proof: ProofObject, format: str) -> str:
    if format == "text":
        return emit_text(proof)
    if format == "json":
        return emit_json(proof)
    if format == "dot":
        return emit_dot(proof)
    raise ValueError(f"unknown proof format {format!r}")
