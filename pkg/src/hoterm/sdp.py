"""Extraction of static dependency pairs.

A candidate of a right-hand side is any argument subterm with the enclosing
binder prefix carried along.  A candidate headed by a defined symbol whose
applied prefixes all stay outside the safe set of the left-hand side yields a
pair: the marked left-hand side rewrites to the marked candidate body, with
the stripped binders turning into extra free variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hrs import Hrs, Rule
from .normalize import PApp, PAtom, Preterm, apply_subst, normalize
from .pfp import safe_subterms
from .terms import (Abs, App, Const, Free, Term, eta_expand, free_names,
                    lam, print_term, strip_binders, top)

MARK = "#"


def mark(t: Term) -> Term:
    """Mark the head symbol of a basic application: f(...) becomes f#(...)."""
    assert isinstance(t, App) and isinstance(t.head, Const)
    head = t.head
    return App(Const(head.name + MARK, head.ty), t.args)


def unmark_name(name: str) -> str:
    return name[:-len(MARK)] if name.endswith(MARK) else name


@dataclass(frozen=True)
class DependencyPair:
    """lhs and rhs are basic applications whose heads carry the mark."""

    lhs: Term
    rhs: Term
    origin_rule: str
    extra_vars: tuple[str, ...]

    def __str__(self) -> str:
        return f"{print_term(self.lhs)} -> {print_term(self.rhs)}"


def candidates(t: Term) -> tuple[Term, ...]:
    """All argument subterms of ``t`` with the binder prefix carried down,
    in traversal order and without duplicates."""
    out: list[Term] = []
    seen: set[Term] = set()

    def walk(u: Term):
        if u not in seen:
            seen.add(u)
            out.append(u)
        binders, body = strip_binders(u)
        for arg in body.args:
            wrapped = arg
            for name, ty in reversed(binders):
                wrapped = lam(name, ty, wrapped)
            walk(wrapped)

    walk(t)
    return tuple(out)


def _canonical_extras(rhs: Term, extras: tuple[str, ...]) -> Term:
    theta = {name: eta_expand(Free(f"${i}", atom.ty))
             for i, name in enumerate(extras)
             for atom in [_free_atom(rhs, name)]}
    return apply_subst(rhs, theta)


def _free_atom(t: Term, name: str) -> Free:
    for atom in sorted(free_names_atoms(t), key=lambda a: a.name):
        if atom.name == name:
            return atom
    raise KeyError(name)


def free_names_atoms(t: Term):
    from .terms import free_vars
    return free_vars(t)


def extract_sdps(h: Hrs) -> tuple[DependencyPair, ...]:
    """The static dependency pairs of the system, in rule order, deduplicated
    up to alpha-equality and renaming of the extra variables."""
    pairs: list[DependencyPair] = []
    keys: set[tuple[Term, Term]] = set()
    for rule in h.rules:
        safe = set(safe_subterms(rule).safe)
        lhs_names = free_names(rule.lhs)
        lhs_marked = mark(rule.lhs)
        for cand in candidates(rule.rhs):
            binders, body = strip_binders(cand)
            head = body.head
            if not isinstance(head, Const) or head.name not in h.defined:
                continue
            if any(p in safe for p in _prefix_normal_forms(head, body.args)):
                continue
            rhs_marked = App(Const(head.name + MARK, head.ty), body.args)
            extras = _occurring_extras(rhs_marked, lhs_names)
            key = (lhs_marked, _canonical_extras(rhs_marked, extras))
            if key in keys:
                continue
            keys.add(key)
            pairs.append(DependencyPair(lhs_marked, rhs_marked,
                                        rule.name, extras))
    return tuple(pairs)


def _prefix_normal_forms(head: Const, arguments: tuple[Term, ...]) -> list[Term]:
    out = []
    for k in range(len(arguments) + 1):
        pre: Preterm = PAtom(head)
        for a in arguments[:k]:
            pre = PApp(pre, a)
        out.append(normalize(pre))
    return out


def _occurring_extras(rhs_marked: Term, lhs_names: frozenset[str]
                      ) -> tuple[str, ...]:
    """Names free in the pair's right side but not its left, in order of
    first occurrence; these are exactly the stripped binders that remain."""
    order: list[str] = []

    def walk(u: Term):
        if isinstance(u, Abs):
            walk(u.body)
            return
        head = u.head
        if isinstance(head, Free) and head.name not in lhs_names \
                and head.name not in order:
            order.append(head.name)
        for a in u.args:
            walk(a)

    walk(rhs_marked)
    return tuple(order)
