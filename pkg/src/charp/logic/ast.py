"""Terms and formulas of the ring and valued-field languages.

Nodes are frozen dataclasses, so structural equality is AST equality.
Constants carry the text of a field element and are resolved by a model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Tuple, Union


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    text: str


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Sub:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Pow:
    base: "Term"
    exp: int


Term = Union[Var, Const, Num, Add, Sub, Mul, Neg, Pow]


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class InO:
    arg: Term


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: Tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: Tuple[str, ...]
    body: "Formula"


Formula = Union[Eq, InO, Not, And, Or, Exists, Forall]
ATOMS = (Eq, InO)


def conj(*parts: Formula) -> Formula:
    out = parts[0]
    for f in parts[1:]:
        out = And(out, f)
    return out


def disj(*parts: Formula) -> Formula:
    out = parts[0]
    for f in parts[1:]:
        out = Or(out, f)
    return out


def total(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def product(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Mul(out, t)
    return out


# -- traversal --------------------------------------------------------------


def term_vars(t: Term) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, (Const, Num)):
        return frozenset()
    if isinstance(t, (Neg,)):
        return term_vars(t.arg)
    if isinstance(t, Pow):
        return term_vars(t.base)
    return term_vars(t.left) | term_vars(t.right)


def free_vars(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, InO):
        return term_vars(f.arg)
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - frozenset(f.vars)


def all_names(f) -> FrozenSet[str]:
    """Every variable name occurring in f, bound or free."""
    if isinstance(f, (Exists, Forall)):
        return frozenset(f.vars) | all_names(f.body)
    if isinstance(f, Not):
        return all_names(f.arg)
    if isinstance(f, (And, Or)):
        return all_names(f.left) | all_names(f.right)
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, InO):
        return term_vars(f.arg)
    return term_vars(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.arg)
    elif isinstance(f, (And, Or)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Exists, Forall)):
        yield from subformulas(f.body)


def atoms(f: Formula) -> Iterator[Formula]:
    return (g for g in subformulas(f) if isinstance(g, ATOMS))


def constants(f) -> FrozenSet[str]:
    out = set()

    def walk_term(t):
        if isinstance(t, Const):
            out.add(t.text)
        elif isinstance(t, (Neg,)):
            walk_term(t.arg)
        elif isinstance(t, Pow):
            walk_term(t.base)
        elif isinstance(t, (Add, Sub, Mul)):
            walk_term(t.left)
            walk_term(t.right)

    for a in atoms(f):
        if isinstance(a, Eq):
            walk_term(a.left)
            walk_term(a.right)
        else:
            walk_term(a.arg)
    return frozenset(out)


def language(f: Formula) -> str:
    """"valued" when the predicate InO occurs, otherwise "ring"."""
    return "valued" if any(isinstance(a, InO) for a in atoms(f)) else "ring"


def is_nnf(f: Formula) -> bool:
    return all(isinstance(g.arg, ATOMS) for g in subformulas(f) if isinstance(g, Not))


def is_existential(f: Formula) -> bool:
    """Equivalent to a formula built from literals with & | and E only."""
    from .rewrite import to_nnf

    return not any(isinstance(g, Forall) for g in subformulas(to_nnf(f)))


def fresh_name(taken, stem: str) -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


# -- printing ---------------------------------------------------------------

_TERM_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4}


def _term(t: Term, ctx: int) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"`{t.text}`"
    if isinstance(t, Num):
        return str(t.value)
    prec = _TERM_PREC[type(t)]
    if isinstance(t, (Add, Sub)):
        op = " + " if isinstance(t, Add) else " - "
        s = _term(t.left, 1) + op + _term(t.right, 2)
    elif isinstance(t, Mul):
        s = _term(t.left, 2) + "*" + _term(t.right, 3)
    elif isinstance(t, Neg):
        s = "-" + _term(t.arg, 3)
    else:
        s = _term(t.base, 5) + "^" + str(t.exp)
    return f"({s})" if prec < ctx else s


def print_term(t: Term) -> str:
    return _term(t, 0)


def _formula(f: Formula, ctx: int) -> str:
    if isinstance(f, Eq):
        s, prec = f"{_term(f.left, 0)} = {_term(f.right, 0)}", 4
    elif isinstance(f, InO):
        s, prec = f"InO({_term(f.arg, 0)})", 5
    elif isinstance(f, Not):
        s, prec = "!" + _formula(f.arg, 3), 3
    elif isinstance(f, And):
        s, prec = _formula(f.left, 2) + " & " + _formula(f.right, 3), 2
    elif isinstance(f, Or):
        s, prec = _formula(f.left, 1) + " | " + _formula(f.right, 2), 1
    else:
        q = "E" if isinstance(f, Exists) else "A"
        s, prec = f"{q} {', '.join(f.vars)} ({_formula(f.body, 0)})", 5
    return f"({s})" if prec < ctx else s


def print_formula(f: Formula) -> str:
    return _formula(f, 0)


def show(x) -> str:
    """Print a term or a formula."""
    if isinstance(x, (Eq, InO, Not, And, Or, Exists, Forall)):
        return print_formula(x)
    return print_term(x)
