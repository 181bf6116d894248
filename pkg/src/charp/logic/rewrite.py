"""Syntactic rewritings: negation normal form, removal of the valuation
predicate in favour of a parameter, and interpretation of residue-field
formulas in the valued field.
"""

from __future__ import annotations

from ..errors import NotExistential, NotNNF
from .ast import (ATOMS, And, Eq, Exists, Forall, Formula, InO, Mul, Not, Num, Or, Pow, Sub, Var, all_names,
                  conj, fresh_name, is_nnf, subformulas)


def to_nnf(f: Formula) -> Formula:
    """Push negations down to atoms; double negations cancel."""
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, And):
        return And(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Or):
        return Or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Exists):
        return Exists(f.vars, to_nnf(f.body))
    if isinstance(f, Forall):
        return Forall(f.vars, to_nnf(f.body))
    g = f.arg
    if isinstance(g, ATOMS):
        return f
    if isinstance(g, Not):
        return to_nnf(g.arg)
    if isinstance(g, And):
        return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Or):
        return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Exists):
        return Forall(g.vars, to_nnf(Not(g.body)))
    return Exists(g.vars, to_nnf(Not(g.body)))


def _require_existential(f: Formula) -> None:
    if any(isinstance(g, Forall) for g in subformulas(to_nnf(f))):
        raise NotExistential("formula has a universal quantifier in negation normal form")


def _map_literals(f: Formula, fn) -> Formula:
    """Rebuild an NNF formula with every literal (atom or negated atom) replaced by fn(literal)."""
    if isinstance(f, ATOMS) or isinstance(f, Not):
        return fn(f)
    if isinstance(f, And):
        return And(_map_literals(f.left, fn), _map_literals(f.right, fn))
    if isinstance(f, Or):
        return Or(_map_literals(f.left, fn), _map_literals(f.right, fn))
    if isinstance(f, Exists):
        return Exists(f.vars, _map_literals(f.body, fn))
    return Forall(f.vars, _map_literals(f.body, fn))


def eliminate_valuation(psi: Formula, X: str | None = None) -> Formula:
    """Replace InO by ring formulas in a parameter X standing for a uniformiser.

    x in O      becomes  E y (X*x^2 = y^2 - y)
    not x in O  becomes  E z, y (z*x = 1 & z^2 = X*(y^2 - y))

    The result has X free; it is the name returned by :func:`parameter_name`
    when X is not given.
    """
    if any(isinstance(g, Forall) for g in subformulas(psi)):
        raise NotExistential("eliminate_valuation needs an existential formula")
    if not is_nnf(psi):
        raise NotNNF("eliminate_valuation needs a formula in negation normal form")
    taken = all_names(psi)
    X = X or parameter_name(psi)
    if X in taken:
        raise ValueError(f"parameter {X!r} already occurs in the formula")
    taken = taken | {X}
    y = fresh_name(taken, "y")
    z = fresh_name(taken | {y}, "z")
    Xv, yv, zv = Var(X), Var(y), Var(z)
    square_gap = Sub(Pow(yv, 2), yv)

    def replace(lit):
        if isinstance(lit, InO):
            return Exists((y,), Eq(Mul(Xv, Pow(lit.arg, 2)), square_gap))
        if isinstance(lit, Not) and isinstance(lit.arg, InO):
            return Exists((z, y), And(Eq(Mul(zv, lit.arg.arg), Num(1)), Eq(Pow(zv, 2), Mul(Xv, square_gap))))
        return lit

    return _map_literals(psi, replace)


def parameter_name(f: Formula) -> str:
    return fresh_name(all_names(f), "w")


def eliminate_inequalities(f: Formula) -> Formula:
    """Replace each negated equation a != b by E y ((a - b)*y = 1)."""
    g = to_nnf(f)
    y = fresh_name(all_names(g), "y")

    def replace(lit):
        if isinstance(lit, Not) and isinstance(lit.arg, Eq):
            a, b = lit.arg.left, lit.arg.right
            diff = a if isinstance(b, Num) and b.value == 0 else Sub(a, b)
            return Exists((y,), Eq(Mul(diff, Var(y)), Num(1)))
        return lit

    return _map_literals(g, replace)


def residue_interpretation(theta: Formula) -> Formula:
    """Translate a ring formula about the residue field into the valued field.

    Quantifiers are relativized to O and a = b becomes
    a = b | E z (z*(a - b) = 1 & !InO(z)), i.e. a - b lies in the maximal ideal.
    """
    _require_existential(theta)
    if any(isinstance(g, InO) for g in subformulas(theta)):
        raise ValueError("residue_interpretation expects a ring-language formula")
    g = eliminate_inequalities(theta)
    z = fresh_name(all_names(g), "z")
    zv = Var(z)

    def walk(f: Formula) -> Formula:
        if isinstance(f, Eq):
            close = Exists((z,), And(Eq(Mul(zv, Sub(f.left, f.right)), Num(1)), Not(InO(zv))))
            return Or(f, close)
        if isinstance(f, And):
            return And(walk(f.left), walk(f.right))
        if isinstance(f, Or):
            return Or(walk(f.left), walk(f.right))
        if isinstance(f, Exists):
            guards = [InO(Var(v)) for v in f.vars]
            return Exists(f.vars, conj(*guards, walk(f.body)))
        raise NotNNF(f"unexpected literal {f!r} after inequality elimination")

    return walk(g)
