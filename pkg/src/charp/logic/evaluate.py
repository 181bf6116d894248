"""Bounded evaluation of formulas with Kleene three-valued answers.

A model supplies ring operations, the predicate InO, constants, and a
candidate list for quantified variables together with a flag saying whether
that list is the whole domain.  Quantifiers over an exhaustive domain are
decided; otherwise only witnesses (for E) and counterexamples (for A) give
definite answers and everything else is Unknown.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from ..budget import Budget
from ..errors import BudgetExceeded, PrecisionTooLow, ResourceExceeded, UnknownConstant, ValueCapExceeded
from ..exactfield.finite import GF
from .ast import (Add, And, Const, Eq, Exists, Formula, InO, Mul, Neg, Not, Num, Or, Sub, Term,
                  Var, free_vars)

DEFAULT_STEPS = 2_000_000


@dataclass
class Verdict:
    value: Optional[bool]
    witnesses: Dict[str, object] = field(default_factory=dict)
    exhausted: bool = False

    @property
    def decided(self) -> bool:
        return self.value is not None

    def label(self) -> str:
        return {True: "true", False: "false", None: "unknown"}[self.value]

    def to_json(self, show=str) -> dict:
        doc = {"verdict": self.label()}
        if self.value is True and self.witnesses:
            doc["witnesses"] = {k: show(v) for k, v in sorted(self.witnesses.items())}
        if self.exhausted:
            doc["budget_exhausted"] = True
        return doc


TRUE = Verdict(True)
FALSE = Verdict(False)
UNKNOWN = Verdict(None)


class FiniteFieldModel:
    """A finite field, trivially valued, searched exhaustively."""

    exhaustive = True

    def __init__(self, F: GF, presentation=None):
        self.F = F
        self.presentation = presentation
        self._elements = F.elements()

    @classmethod
    def prime(cls, p: int) -> "FiniteFieldModel":
        return cls(GF(p))

    @classmethod
    def of(cls, L) -> "FiniteFieldModel":
        """From a finite FieldPresentation; constants are read in its ring."""
        return cls(L.finite_field(), L)

    def candidates(self) -> Sequence:
        return self._elements

    def const(self, text: str):
        if self.presentation is None:
            try:
                return self.F.from_int(int(text))
            except ValueError:
                raise UnknownConstant(f"constant `{text}` cannot be read in {self.describe()}") from None
        try:
            return self.presentation.to_gf(self.presentation.element(text))
        except Exception:
            raise UnknownConstant(f"constant `{text}` cannot be read in {self.describe()}") from None

    def from_int(self, n: int):
        return self.F.from_int(n)

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def power(self, a, k: int):
        return self.F.pow(a, k)

    def equal(self, a, b) -> bool:
        return a == b

    def in_O(self, a) -> bool:
        return True

    def uniformiser(self):
        # the trivial valuation: 0 plays the role of the parameter
        return self.F.zero

    def show(self, a) -> str:
        if self.presentation is not None:
            return str(self.presentation.from_gf(a))
        return str(a)

    def describe(self) -> str:
        return f"GF({self.F.q})"


class _Evaluator:
    def __init__(self, model, budget: Budget, constants: Dict[str, object]):
        self.m = model
        self.budget = budget
        self.consts = constants

    def term(self, t: Term, env):
        m = self.m
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Num):
            return m.from_int(t.value)
        if isinstance(t, Const):
            if t.text not in self.consts:
                self.consts[t.text] = m.const(t.text)
            return self.consts[t.text]
        if isinstance(t, Add):
            return m.add(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Sub):
            return m.sub(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Mul):
            return m.mul(self.term(t.left, env), self.term(t.right, env))
        if isinstance(t, Neg):
            return m.neg(self.term(t.arg, env))
        return m.power(self.term(t.base, env), t.exp)

    def formula(self, f: Formula, env) -> Verdict:
        if isinstance(f, (Eq, InO)):
            self.budget.spend(1)
            try:
                if isinstance(f, Eq):
                    holds = self.m.equal(self.term(f.left, env), self.term(f.right, env))
                else:
                    holds = self.m.in_O(self.term(f.arg, env))
            except (ValueCapExceeded, PrecisionTooLow):
                # the value leaves the represented range of a truncated model
                return UNKNOWN
            return TRUE if holds else FALSE
        if isinstance(f, Not):
            v = self.formula(f.arg, env)
            return UNKNOWN if v.value is None else (FALSE if v.value else TRUE)
        if isinstance(f, And):
            a = self.formula(f.left, env)
            if a.value is False:
                return FALSE
            b = self.formula(f.right, env)
            if b.value is False:
                return FALSE
            if a.value and b.value:
                return Verdict(True, {**a.witnesses, **b.witnesses})
            return UNKNOWN
        if isinstance(f, Or):
            a = self.formula(f.left, env)
            if a.value:
                return a
            b = self.formula(f.right, env)
            if b.value:
                return b
            if a.value is False and b.value is False:
                return FALSE
            return UNKNOWN
        return self.quantifier(f, env)

    def quantifier(self, f, env) -> Verdict:
        existential = isinstance(f, Exists)
        unknown = False
        domain = self.m.candidates()
        for values in itertools.product(domain, repeat=len(f.vars)):
            inner = dict(env)
            inner.update(zip(f.vars, values))
            v = self.formula(f.body, inner)
            if v.value is None:
                unknown = True
            elif v.value == existential:
                if existential:
                    return Verdict(True, {**dict(zip(f.vars, values)), **v.witnesses})
                return FALSE
        if unknown or not self.m.exhaustive:
            return UNKNOWN
        return FALSE if existential else TRUE


def eval_bounded(f: Formula, model, budget: Budget | int | None = None,
                 assignment: Optional[Dict[str, object]] = None) -> Verdict:
    """Kleene evaluation of f in model; free variables must be assigned.

    Running out of budget gives Unknown with ``exhausted`` set.
    """
    env = dict(assignment or {})
    missing = free_vars(f) - set(env)
    if missing:
        raise ValueError(f"free variables without values: {sorted(missing)}")
    if budget is None or isinstance(budget, int):
        budget = Budget(budget or DEFAULT_STEPS)
    ev = _Evaluator(model, budget, {})
    try:
        return ev.formula(f, env)
    except (ResourceExceeded, BudgetExceeded):
        return Verdict(None, exhausted=True)
