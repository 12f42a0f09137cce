"""Terms, variables, substitutions and renamings.

Open terms double as process contexts: a context is a term whose variables
mark the holes.  Everything here is an immutable value with structural
equality, so terms can be shared freely, used as dict keys, and compared
with plain ``==``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional


@dataclass(frozen=True, order=True)
class Variable:
    """A process variable, identified by its full name."""

    name: str

    def __str__(self) -> str:
        return self.name


class Term:
    """Base class of the term algebra; concrete terms are Var or App."""

    __slots__ = ()

    def __str__(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class Var(Term):
    """A variable occurrence."""

    var: Variable

    def __str__(self) -> str:
        return self.var.name


@dataclass(frozen=True)
class App(Term):
    """An operation applied to argument terms; constants have no args."""

    op: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


def var(name: str) -> Var:
    """Shorthand for a variable occurrence with the given name."""
    return Var(Variable(name))


def term_vars(t: Term) -> frozenset[Variable]:
    """The set of variables occurring in ``t``."""
    if isinstance(t, Var):
        return frozenset((t.var,))
    acc: set[Variable] = set()
    for a in t.args:
        acc |= term_vars(a)
    return frozenset(acc)


def is_closed(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_closed(a) for a in t.args)


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of ``t``, including ``t`` itself, in preorder."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_size(t: Term) -> int:
    """Number of nodes in ``t``."""
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def term_depth(t: Term) -> int:
    """Height of ``t``; a variable or constant has depth 1."""
    if isinstance(t, Var) or not t.args:
        return 1
    return 1 + max(term_depth(a) for a in t.args)


@dataclass(frozen=True)
class Substitution:
    """A finite-support map from variables to terms, identity elsewhere."""

    mapping: Mapping[Variable, Term]

    def get(self, v: Variable) -> Term:
        return self.mapping.get(v, Var(v))

    def apply(self, t: Term) -> Term:
        return apply_subst(t, self)

    def __str__(self) -> str:
        items = ", ".join(
            f"{v} -> {t}" for v, t in sorted(self.mapping.items(), key=lambda kv: kv[0])
        )
        return "{" + items + "}"


def apply_subst(t: Term, s: Substitution | Mapping[Variable, Term]) -> Term:
    """Simultaneously replace every supported variable of ``t``."""
    mapping = s.mapping if isinstance(s, Substitution) else s
    if isinstance(t, Var):
        return mapping.get(t.var, t)
    if not t.args:
        return t
    return App(t.op, tuple(apply_subst(a, mapping) for a in t.args))


class RenamingError(ValueError):
    """Raised when a variable-to-variable map is not injective."""


@dataclass(frozen=True)
class Renaming:
    """An injective finite map between variables."""

    mapping: Mapping[Variable, Variable]

    def __post_init__(self) -> None:
        values = list(self.mapping.values())
        if len(set(values)) != len(values):
            raise RenamingError(f"renaming is not injective: {self.mapping}")

    def get(self, v: Variable) -> Variable:
        return self.mapping.get(v, v)

    def apply(self, t: Term) -> Term:
        if isinstance(t, Var):
            return Var(self.get(t.var))
        if not t.args:
            return t
        return App(t.op, tuple(self.apply(a) for a in t.args))

    def as_substitution(self) -> Substitution:
        return Substitution({v: Var(w) for v, w in self.mapping.items()})

    def inverse(self) -> Renaming:
        return Renaming({w: v for v, w in self.mapping.items()})

    def compose(self, first: Renaming) -> Renaming:
        """The renaming applying ``first`` and then ``self``.

        Variables mapped by ``self`` but untouched by ``first`` keep their
        image under ``self``.
        """
        out = {v: self.get(w) for v, w in first.mapping.items()}
        for v, w in self.mapping.items():
            if v not in out and v not in first.mapping:
                out[v] = w
        return Renaming(out)


_TRAILING_DIGITS = re.compile(r"[0-9]+$")


def fresh_variable(exclude: Iterable[Variable], hint: str = "v") -> Variable:
    """A variable outside ``exclude``, chosen deterministically from ``hint``.

    The hint itself is used when free; otherwise the lowest unused numeric
    suffix on the hint's base name wins, so equal inputs always yield equal
    outputs.
    """
    taken = set(exclude)
    candidate = Variable(hint)
    if candidate not in taken:
        return candidate
    base = _TRAILING_DIGITS.sub("", hint) or hint
    candidate = Variable(base)
    if candidate not in taken:
        return candidate
    i = 1
    while Variable(f"{base}{i}") in taken:
        i += 1
    return Variable(f"{base}{i}")


def match_modulo_renaming(
    pattern: tuple[Term, Term], instance: tuple[Term, Term]
) -> Optional[Renaming]:
    """Find an injective renaming turning ``pattern`` into ``instance``.

    The renaming is applied consistently to both components, and pattern
    variables may only be mapped to variables of the instance.  Returns
    ``None`` when no such renaming exists.
    """
    binding: dict[Variable, Variable] = {}
    used: set[Variable] = set()

    def walk(p: Term, t: Term) -> bool:
        if isinstance(p, Var):
            if not isinstance(t, Var):
                return False
            if p.var in binding:
                return binding[p.var] == t.var
            if t.var in used:
                return False
            binding[p.var] = t.var
            used.add(t.var)
            return True
        if not isinstance(t, App) or p.op != t.op or len(p.args) != len(t.args):
            return False
        return all(walk(a, b) for a, b in zip(p.args, t.args))

    if walk(pattern[0], instance[0]) and walk(pattern[1], instance[1]):
        return Renaming(binding)
    return None
