"""Simply typed lambda terms kept in eta-long beta-normal form.

Every term has the shape ``\\x1 ... xm. a(t1, ..., tn)`` where the head ``a``
is a function symbol, a free variable, or a bound variable, applied to exactly
as many arguments as its type demands; application nodes therefore always have
a basic type.  Bound variables are stored as nameless indices (the binder name
is kept only as a printing hint), so alpha-equality coincides with structural
equality and terms can be used directly as set members and dict keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

# ---------------------------------------------------------------------------
# simple types


class SimpleType:
    """A basic type or a function type built from basic types."""

    __slots__ = ()


@dataclass(frozen=True)
class Base(SimpleType):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arrow(SimpleType):
    dom: SimpleType
    cod: SimpleType

    def __str__(self) -> str:
        dom = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{dom} -> {self.cod}"


def arrow(*types: SimpleType) -> SimpleType:
    """Right-associated function type: arrow(a, b, c) is a -> (b -> c)."""
    if not types:
        raise ValueError("arrow() needs at least one type")
    result = types[-1]
    for dom in reversed(types[:-1]):
        result = Arrow(dom, result)
    return result


def domains(ty: SimpleType) -> tuple[SimpleType, ...]:
    out = []
    while isinstance(ty, Arrow):
        out.append(ty.dom)
        ty = ty.cod
    return tuple(out)


def result_type(ty: SimpleType) -> Base:
    while isinstance(ty, Arrow):
        ty = ty.cod
    assert isinstance(ty, Base)
    return ty


def arity(ty: SimpleType) -> int:
    return len(domains(ty))


# ---------------------------------------------------------------------------
# atoms: the possible heads of an application


@dataclass(frozen=True)
class Const:
    """A function symbol from the signature."""

    name: str
    ty: SimpleType


@dataclass(frozen=True)
class Free:
    """A free variable."""

    name: str
    ty: SimpleType


@dataclass(frozen=True)
class Bound:
    """A bound variable as a de Bruijn index (0 is the innermost binder)."""

    index: int
    ty: SimpleType


Atom = Union[Const, Free, Bound]


class TermTypeError(TypeError):
    """A term or preterm violates the typing discipline."""

    def __init__(self, message: str, subject: object = None,
                 expected: SimpleType | None = None,
                 actual: SimpleType | None = None):
        detail = message
        if subject is not None:
            detail += f" in {subject!r}"
        if expected is not None or actual is not None:
            detail += f" (expected {expected}, got {actual})"
        super().__init__(detail)
        self.subject = subject
        self.expected = expected
        self.actual = actual


# ---------------------------------------------------------------------------
# terms


class Term:
    """Base class of eta-long beta-normal terms."""

    __slots__ = ()

    ty: SimpleType


@dataclass(frozen=True, eq=False, repr=False)
class Abs(Term):
    hint: str
    param_type: SimpleType
    body: Term

    def __post_init__(self):
        object.__setattr__(self, "_ty", Arrow(self.param_type, self.body.ty))
        object.__setattr__(self, "_hash",
                           hash(("abs", self.param_type, self.body)))

    @property
    def ty(self) -> SimpleType:
        return self._ty

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Abs):
            return NotImplemented if not isinstance(other, Term) else False
        return (self._hash == other._hash
                and self.param_type == other.param_type
                and self.body == other.body)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return print_term(self)


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    head: Atom
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        ty = self.head.ty
        for i, arg in enumerate(self.args):
            if not isinstance(ty, Arrow):
                raise TermTypeError(
                    f"head {atom_name(self.head)} applied to too many arguments",
                    subject=atom_name(self.head), actual=self.head.ty)
            if arg.ty != ty.dom:
                raise TermTypeError(
                    f"argument {i + 1} of {atom_name(self.head)} has the wrong type",
                    subject=arg, expected=ty.dom, actual=arg.ty)
            ty = ty.cod
        if not isinstance(ty, Base):
            raise TermTypeError(
                f"under-applied head {atom_name(self.head)}: "
                "application nodes must have a basic type",
                subject=atom_name(self.head), actual=ty)
        object.__setattr__(self, "_ty", ty)
        object.__setattr__(self, "_hash", hash(("app", self.head, self.args)))

    @property
    def ty(self) -> SimpleType:
        return self._ty

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, App):
            return NotImplemented if not isinstance(other, Term) else False
        return (self._hash == other._hash
                and self.head == other.head
                and self.args == other.args)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return print_term(self)


def atom_name(atom: Atom) -> str:
    if isinstance(atom, Bound):
        return f"<bound {atom.index}>"
    return atom.name


def alpha_eq(s: Term, t: Term) -> bool:
    """Alpha-equality; identical to ``==`` in this representation."""
    return s == t


# ---------------------------------------------------------------------------
# eta-long expansion of a bare atom


_ETA_HINTS = "xyzwvu"


def eta_hint(depth: int) -> str:
    letter = _ETA_HINTS[depth % len(_ETA_HINTS)]
    suffix = depth // len(_ETA_HINTS)
    return letter if suffix == 0 else f"{letter}{suffix}"


def eta_expand(atom: Atom) -> Term:
    """The eta-long term standing for a bare atom, e.g. \\x y. F(x, y)."""
    doms = domains(atom.ty)
    m = len(doms)
    if m == 0:
        return App(atom, ())
    if isinstance(atom, Bound):
        head: Atom = Bound(atom.index + m, atom.ty)
    else:
        head = atom
    args = tuple(eta_expand(Bound(m - 1 - i, doms[i])) for i in range(m))
    term: Term = App(head, args)
    for i in reversed(range(m)):
        term = Abs(eta_hint(i), doms[i], term)
    return term


def const(name: str, ty: SimpleType) -> Term:
    return eta_expand(Const(name, ty))


def var(name: str, ty: SimpleType) -> Term:
    return eta_expand(Free(name, ty))


# ---------------------------------------------------------------------------
# opening and closing binders

def open_with(body: Term, name: str) -> Term:
    """Replace references to the binder just stripped off by a free variable."""

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Abs):
            return Abs(t.hint, t.param_type, go(t.body, depth + 1))
        head = t.head
        if isinstance(head, Bound) and head.index == depth:
            head = Free(name, head.ty)
        return App(head, tuple(go(a, depth) for a in t.args))

    return go(body, 0)


def close_over(t: Term, name: str) -> Term:
    """Turn free occurrences of ``name`` into references to a new outer binder."""

    def go(u: Term, depth: int) -> Term:
        if isinstance(u, Abs):
            return Abs(u.hint, u.param_type, go(u.body, depth + 1))
        head = u.head
        if isinstance(head, Free) and head.name == name:
            head = Bound(depth, head.ty)
        return App(head, tuple(go(a, depth) for a in u.args))

    return go(t, 0)


def lam(name: str, param_type: SimpleType, body: Term) -> Abs:
    """Bind the free variable ``name`` of ``body`` under a new abstraction."""
    return Abs(name, param_type, close_over(body, name))


def free_vars(t: Term) -> frozenset[Free]:
    out: set[Free] = set()

    def go(u: Term):
        if isinstance(u, Abs):
            go(u.body)
            return
        if isinstance(u.head, Free):
            out.add(u.head)
        for a in u.args:
            go(a)

    go(t)
    return frozenset(out)


def free_names(t: Term) -> frozenset[str]:
    return frozenset(a.name for a in free_vars(t))


def liberation_name(hint: str, avoid: Iterable[str]) -> str:
    """Deterministic display name for a binder being opened."""
    name = hint or "x"
    avoid = set(avoid)
    while name in avoid:
        name += "'"
    return name


def open_abs(t: Abs, avoid: set[str]) -> tuple[str, Term]:
    """Open an abstraction, picking a name that collides with nothing in scope."""
    name = liberation_name(t.hint, avoid)
    return name, open_with(t.body, name)


def strip_binders(t: Term, avoid: Iterable[str] | None = None
                  ) -> tuple[tuple[tuple[str, SimpleType], ...], App]:
    """Open the whole binder prefix; returns the binders and the body."""
    names = set(avoid) if avoid is not None else set(free_names(t))
    binders: list[tuple[str, SimpleType]] = []
    while isinstance(t, Abs):
        name, body = open_abs(t, names)
        names.add(name)
        binders.append((name, t.param_type))
        t = body
    assert isinstance(t, App)
    return tuple(binders), t


def top(t: Term) -> Atom:
    """The head symbol or variable under the binder prefix."""
    if isinstance(t, App):
        return t.head
    _, body = strip_binders(t)
    return body.head


def args(t: Term) -> tuple[Term, ...]:
    """Arguments of the head, with any binder prefix opened."""
    _, body = strip_binders(t)
    return body.args


# ---------------------------------------------------------------------------
# positions and subterms

Position = tuple[int, ...]


class PositionError(ValueError):
    """A position does not exist in the term it was applied to."""

    def __init__(self, position: Position, index: int, message: str):
        super().__init__(
            f"position {format_position(position)} invalid: {message}")
        self.position = position
        self.index = index


def format_position(p: Position) -> str:
    return ".".join(str(i) for i in p) if p else "e"


def positions(t: Term) -> list[Position]:
    """All positions of ``t``: the root, 1 under a binder, i into argument i."""
    out: list[Position] = [()]
    if isinstance(t, Abs):
        out.extend((1,) + p for p in positions(t.body))
    else:
        for i, a in enumerate(t.args, start=1):
            out.extend((i,) + p for p in positions(a))
    return out


def subterm_at(t: Term, p: Position) -> Term:
    """The subterm at ``p``; binders crossed on the way become free variables."""
    avoid = set(free_names(t))
    cur = t
    for step, i in enumerate(p):
        if isinstance(cur, Abs):
            if i != 1:
                raise PositionError(p, i,
                                    f"index {i} at step {step} descends into a "
                                    "binder, which has only position 1")
            name, cur = open_abs(cur, avoid)
            avoid.add(name)
        else:
            if not 1 <= i <= len(cur.args):
                raise PositionError(p, i,
                                    f"index {i} at step {step} out of range: "
                                    f"node has {len(cur.args)} arguments")
            cur = cur.args[i - 1]
    return cur


def replace_at(t: Term, p: Position, new: Term) -> Term:
    """Replace the subterm at ``p``, re-binding variables freed on the way down."""

    def go(cur: Term, rest: Position, avoid: set[str]) -> Term:
        if not rest:
            if new.ty != cur.ty:
                raise TermTypeError("replacement changes the type at the position",
                                    subject=new, expected=cur.ty, actual=new.ty)
            return new
        i = rest[0]
        if isinstance(cur, Abs):
            if i != 1:
                raise PositionError(p, i, "binder has only position 1")
            name, body = open_abs(cur, avoid)
            body = go(body, rest[1:], avoid | {name})
            return Abs(cur.hint, cur.param_type, close_over(body, name))
        if not 1 <= i <= len(cur.args):
            raise PositionError(p, i,
                                f"index {i} out of range: node has "
                                f"{len(cur.args)} arguments")
        new_args = list(cur.args)
        new_args[i - 1] = go(cur.args[i - 1], rest[1:], avoid)
        return App(cur.head, tuple(new_args))

    return go(t, p, set(free_names(t)))


def subterms(t: Term) -> tuple[Term, ...]:
    """All distinct subterms in preorder; names freed under binders follow the
    same convention as subterm_at, so both views agree."""
    out: list[Term] = []
    seen: set[Term] = set()

    def walk(u: Term, avoid: set[str]):
        if u not in seen:
            seen.add(u)
            out.append(u)
        if isinstance(u, Abs):
            name, body = open_abs(u, avoid)
            walk(body, avoid | {name})
        else:
            for a in u.args:
                walk(a, avoid)

    walk(t, set(free_names(t)))
    return tuple(out)


def is_subterm(s: Term, t: Term) -> bool:
    """True when ``s`` occurs in ``t`` (reflexively)."""
    return s in subterms(t)


# ---------------------------------------------------------------------------
# printing

def print_term(t: Term, avoid: Iterable[str] = ()) -> str:
    """Concrete syntax: f(a, b), \\x y. body, bare names for atoms."""
    taboo = set(avoid) | set(free_names(t))

    def binder_name(hint: str, scope: list[str]) -> str:
        name = hint or "x"
        while name in taboo or name in scope:
            name += "'"
        return name

    def go(u: Term, scope: list[str]) -> str:
        if isinstance(u, Abs):
            names: list[str] = []
            while isinstance(u, Abs):
                name = binder_name(u.hint, scope + names)
                names.append(name)
                u = u.body
            body = go_app(u, scope + names)
            return "\\" + " ".join(names) + ". " + body
        return go_app(u, scope)

    def go_app(u: Term, scope: list[str]) -> str:
        if isinstance(u, Abs):
            return go(u, scope)
        head = u.head
        if isinstance(head, Bound):
            name = scope[-1 - head.index]
        else:
            name = head.name
        if not u.args:
            return name
        return name + "(" + ", ".join(go(a, scope) for a in u.args) + ")"

    return go(t, [])
