"""Pattern matching and rewriting.

Matching is decidable because rule left-hand sides are restricted to patterns:
free variables applied only to pairwise distinct bound variables.  A match is
unique when it exists, and rewriting replaces the matched subterm in place,
so a rewrite step is identified by (rule, position, result).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

from .hrs import Hrs, Rule
from .normalize import Subst, apply_subst
from .terms import (Abs, App, Arrow, Base, Bound, Const, Free, Position,
                    SimpleType, Term, domains, eta_expand, eta_hint,
                    free_names, open_abs, open_with, positions, replace_at,
                    result_type)


class NonPatternError(ValueError):
    """Matching was attempted against a non-pattern left-hand side."""


_MARKER = "!"


def _opened_atom(a: Term) -> Free | None:
    """The marker variable ``a`` eta-expands, if it is one."""
    u = a
    while isinstance(u, Abs):
        u = u.body
    head = u.head
    if isinstance(head, Free) and head.name.startswith(_MARKER):
        atom = Free(head.name, a.ty)
        if a == eta_expand(atom):
            return atom
    return None


def match(pattern: Term, subject: Term,
          pattern_vars: frozenset[str] | None = None) -> dict[str, Term] | None:
    """The unique substitution theta with pattern[theta] == subject, or None.

    Raises NonPatternError when a pattern variable is applied to anything
    other than pairwise distinct bound variables.
    """
    if pattern.ty != subject.ty:
        return None
    pvars = free_names(pattern) if pattern_vars is None else pattern_vars
    theta: dict[str, Term] = {}
    hints: dict[str, str] = {}  # marker name -> pattern binder hint

    def close_as(t: Term, atom: Free, hint: str) -> Term:
        def close(u: Term, d: int) -> Term:
            if isinstance(u, Abs):
                return Abs(u.hint, u.param_type, close(u.body, d + 1))
            head = u.head
            if head == atom:
                head = Bound(d, atom.ty)
            return App(head, tuple(close(a, d) for a in u.args))

        return Abs(hint, atom.ty, close(t, 0))

    def go(p: Term, s: Term, depth: int) -> bool:
        if isinstance(p, Abs):
            if not isinstance(s, Abs) or p.param_type != s.param_type:
                return False
            name = f"{_MARKER}{depth}"
            hints[name] = p.hint
            return go(open_with(p.body, name), open_with(s.body, name),
                      depth + 1)
        if isinstance(s, Abs):
            return False
        ph = p.head
        if isinstance(ph, Free) and ph.name in pvars:
            markers: list[Free] = []
            for a in p.args:
                atom = _opened_atom(a)
                if atom is None or atom in markers:
                    raise NonPatternError(
                        "pattern variable applied to arguments that are not "
                        "pairwise distinct bound variables")
                markers.append(atom)
            candidate: Term = s
            for atom in reversed(markers):
                candidate = close_as(candidate, atom, hints.get(atom.name, "x"))
            if any(n.startswith(_MARKER) for n in free_names(candidate)):
                return False
            previous = theta.get(ph.name)
            if previous is not None:
                return previous == candidate
            theta[ph.name] = candidate
            return True
        if ph != s.head:
            return False
        return all(go(pa, sa, depth) for pa, sa in zip(p.args, s.args))

    if not go(pattern, subject, 0):
        return None
    assert apply_subst(pattern, theta) == subject, \
        "internal error: match result does not reproduce the subject"
    return theta


# ---------------------------------------------------------------------------
# single steps


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    position: Position
    result: Term


def rewrite_step(h: Hrs, t: Term) -> tuple[RewriteStep, ...]:
    """All one-step rewrites of ``t``, ordered by rule name then position."""
    for rule in h.rules:
        if not rule.is_pattern:
            raise NonPatternError(
                f"rule {rule.name!r}: matching is undecidable for "
                "non-pattern left-hand sides")
    hits: list[tuple[str, Position, Term]] = []

    def walk(u: Term, pos: Position, avoid: set[str]):
        if isinstance(u.ty, Base):
            for rule in h.rules:
                if rule.lhs.ty == u.ty:
                    theta = match(rule.lhs, u, free_names(rule.lhs))
                    if theta is not None:
                        hits.append((rule.name, pos, apply_subst(rule.rhs, theta)))
        if isinstance(u, Abs):
            name, body = open_abs(u, avoid)
            walk(body, pos + (1,), avoid | {name})
        else:
            for i, a in enumerate(u.args, start=1):
                walk(a, pos + (i,), avoid)

    walk(t, (), set(free_names(t)))
    hits.sort(key=lambda hit: (hit[0], hit[1]))
    return tuple(RewriteStep(rule, pos, replace_at(t, pos, res))
                 for rule, pos, res in hits)


# ---------------------------------------------------------------------------
# bounded search


@dataclass(frozen=True)
class LoopFound:
    """A rewrite path whose last term alpha-equals an earlier one."""

    start: Term
    trace: tuple[RewriteStep, ...]


@dataclass(frozen=True)
class NormalForm:
    term: Term


@dataclass(frozen=True)
class DepthExhausted:
    max_steps: int


SearchOutcome = Union[LoopFound, NormalForm, DepthExhausted]


def bounded_search(h: Hrs, t: Term, max_steps: int = 1000,
                   max_nodes: int = 100_000) -> SearchOutcome:
    """Breadth-first exploration of all rewrite paths from ``t``.

    Returns LoopFound as soon as any path revisits an alpha-equal term
    (the start term counts), NormalForm when every path ends within the
    bound, and DepthExhausted otherwise.  ``max_nodes`` is a safety valve
    against exponential frontiers.
    """
    queue: deque[tuple[Term, tuple[RewriteStep, ...], frozenset[Term]]] = \
        deque([(t, (), frozenset([t]))])
    first_nf: Term | None = None
    truncated = False
    expanded = 0
    while queue:
        current, path, ancestors = queue.popleft()
        steps = rewrite_step(h, current)
        if not steps:
            if first_nf is None:
                first_nf = current
            continue
        if len(path) >= max_steps:
            truncated = True
            continue
        expanded += 1
        if expanded > max_nodes:
            truncated = True
            break
        for step in steps:
            if step.result in ancestors:
                return LoopFound(t, path + (step,))
            queue.append((step.result, path + (step,),
                          ancestors | {step.result}))
    if truncated:
        return DepthExhausted(max_steps)
    assert first_nf is not None
    return NormalForm(first_nf)


def reachable(h: Hrs, source: Term, target: Term, max_steps: int) -> bool:
    """True when some rewrite path of length <= max_steps joins the terms."""
    if source == target:
        return True
    frontier = [source]
    visited = {source}
    for _ in range(max_steps):
        nxt: list[Term] = []
        for u in frontier:
            for step in rewrite_step(h, u):
                if step.result == target:
                    return True
                if step.result not in visited:
                    visited.add(step.result)
                    nxt.append(step.result)
        if not nxt:
            return False
        frontier = nxt
    return False


# ---------------------------------------------------------------------------
# loop hunting for disproofs


def _term_size(t: Term) -> int:
    if isinstance(t, Abs):
        return 1 + _term_size(t.body)
    return 1 + sum(_term_size(a) for a in t.args)


def enumerate_closed_terms(h: Hrs, ty: SimpleType,
                           max_size: int) -> Iterator[Term]:
    """Closed eta-long terms of the given type over the signature, smallest
    first; used to instantiate rule variables when hunting for loops."""
    sig = sorted(h.signature.items())

    def gen(want: SimpleType, budget: int,
            env: tuple[SimpleType, ...]) -> Iterator[Term]:
        if budget <= 0:
            return
        if isinstance(want, Arrow):
            for body in gen(want.cod, budget - 1, env + (want.dom,)):
                yield Abs(eta_hint(len(env)), want.dom, body)
            return
        heads: list = [Bound(i, bty)
                       for i, bty in enumerate(reversed(env))]
        heads.extend(Const(name, sty) for name, sty in sig)
        for head in heads:
            if result_type(head.ty) != want:
                continue
            doms = domains(head.ty)
            for args in gen_args(doms, budget - 1, env):
                yield App(head, args)

    def gen_args(doms: tuple[SimpleType, ...], budget: int,
                 env: tuple[SimpleType, ...]) -> Iterator[tuple[Term, ...]]:
        if not doms:
            yield ()
            return
        head_budget = budget - (len(doms) - 1)
        for first in gen(doms[0], head_budget, env):
            used = _term_size(first)
            for rest in gen_args(doms[1:], budget - used, env):
                yield (first,) + rest

    produced = sorted(gen(ty, max_size, ()), key=_term_size)
    yield from produced


def loop_seeds(h: Hrs, max_term_size: int = 4,
               cap: int = 200) -> Iterator[Term]:
    """Left-hand sides instantiated with small closed terms."""
    seen: set[Term] = set()
    emitted = 0
    for rule in h.rules:
        fvars = sorted(free_names(rule.lhs))
        var_types = {name: atom.ty
                     for atom in _rule_free_atoms(rule) for name in [atom.name]}
        pools = []
        for name in fvars:
            pool = list(itertools.islice(
                enumerate_closed_terms(h, var_types[name], max_term_size), 25))
            pools.append(pool)
        for combo in itertools.product(*pools):
            theta = dict(zip(fvars, combo))
            seed = apply_subst(rule.lhs, theta)
            if seed in seen:
                continue
            seen.add(seed)
            yield seed
            emitted += 1
            if emitted >= cap:
                return


def _rule_free_atoms(rule: Rule) -> list[Free]:
    from .terms import free_vars
    return sorted(free_vars(rule.lhs), key=lambda a: a.name)


def find_loop(h: Hrs, max_steps: int = 1000, max_term_size: int = 4,
              cap: int = 200, max_nodes: int = 20_000) -> LoopFound | None:
    """Search for a looping reduction from small instances of the rules."""
    for seed in loop_seeds(h, max_term_size, cap):
        outcome = bounded_search(h, seed, max_steps, max_nodes)
        if isinstance(outcome, LoopFound):
            return outcome
    return None
