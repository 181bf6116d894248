"""Finitely generated fields of characteristic p.

A :class:`FieldPresentation` is Frac(F_p[X_1..X_n] / P) for a prime ideal P,
together with a tower of subfields.  Each tower layer is a subset of the
generators; its field is Frac(F_p[layer] / (P contracted to the layer)).
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from ..budget import Budget, ensure
from ..errors import NotPrime
from .finite import GF
from .groebner import (
    IdealHandle,
    contraction,
    divide_exact,
    groebner_basis,
    krull_dimension,
    normal_form,
    standard_monomials,
)
from .linalg import rank_mod_p, solve_mod_p
from .parsing import parse_rational
from .poly import MultiPoly, PolyRing

LayerRef = Union[int, Sequence[str], None]


class FieldPresentation:
    """Frac(F_p[generators] / (relations)) with a subfield tower."""

    def __init__(self, p: int, generators: Sequence[str], relations: Iterable = (),
                 tower: Optional[Sequence[Sequence[str]]] = None, assert_prime: bool = False):
        self.ring = PolyRing(p, generators)
        self.p = p
        self.generators = self.ring.names
        rels = []
        for r in relations:
            f = self.ring.parse(r) if isinstance(r, str) else r.to_ring(self.ring)
            if not f.is_zero():
                rels.append(f)
        self.relations = tuple(rels)
        self.ideal = IdealHandle.of(self.ring, self.relations)
        layers = [tuple(layer) for layer in (tower or [])]
        full = tuple(self.generators)
        cleaned = []
        for layer in layers:
            for n in layer:
                if n not in self.ring.names:
                    raise ValueError(f"tower layer mentions unknown generator {n!r}")
            ordered = tuple(n for n in self.generators if n in set(layer))
            if ordered and ordered != full and ordered not in cleaned:
                cleaned.append(ordered)
        for a, b in zip(cleaned, cleaned[1:]):
            if not set(a) < set(b):
                raise ValueError(f"tower layers must be strictly increasing: {a} then {b}")
        self.tower: Tuple[Tuple[str, ...], ...] = tuple(cleaned) + (full,)
        self.assert_prime = assert_prime
        self._certificate = None
        self._dim = None

    # -- construction helpers ---------------------------------------------
    @classmethod
    def rational(cls, p: int, names: Sequence[str], tower=None) -> "FieldPresentation":
        return cls(p, names, (), tower)

    @classmethod
    def from_json(cls, doc) -> "FieldPresentation":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(int(doc["p"]), doc.get("generators", []), doc.get("relations", []), doc.get("tower"),
                   bool(doc.get("assert_prime", False)))

    def to_json(self) -> dict:
        doc = {
            "p": self.p,
            "generators": list(self.generators),
            "relations": [str(r) for r in self.relations],
            "tower": [list(layer) for layer in self.tower],
        }
        if self.assert_prime:
            doc["assert_prime"] = True
        return doc

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"FieldPresentation(p={self.p}, gens={list(self.generators)}, rels=[{rels}])"

    def __eq__(self, other):
        return (isinstance(other, FieldPresentation) and self.ring == other.ring
                and set(self.relations) == set(other.relations) and self.tower == other.tower)

    def __hash__(self):
        return hash((self.ring, frozenset(self.relations), self.tower))

    # -- validation ---------------------------------------------------------
    def validate(self, budget: Budget | None = None) -> "FieldPresentation":
        """Check properness and certify primality; raises NotPrime on failure."""
        budget = ensure(budget)
        if self.ideal.is_unit(budget):
            raise NotPrime("defining ideal is the unit ideal")
        self.certify(budget)
        return self

    def certify(self, budget: Budget | None = None) -> str:
        if self._certificate is None:
            from .certify import certify_prime

            self._certificate = certify_prime(self.ring, self.relations, self.assert_prime, ensure(budget))
        return self._certificate

    # -- layers -------------------------------------------------------------
    def layer_names(self, ref: LayerRef) -> Tuple[str, ...]:
        if ref is None:
            return ()
        if isinstance(ref, int):
            if ref < 0:
                return self.tower[ref]
            return self.tower[ref]
        if isinstance(ref, str):
            if ref in ("", "prime", "Fp"):
                return ()
            ref = [ref]
        names = tuple(n for n in self.generators if n in set(ref))
        if len(names) != len(set(ref)):
            raise ValueError(f"layer {list(ref)} mentions unknown generators")
        return names

    def is_declared_layer(self, ref: LayerRef) -> bool:
        names = self.layer_names(ref)
        return names == () or names in self.tower

    def layer_ideal(self, ref: LayerRef, budget: Budget | None = None) -> IdealHandle:
        names = self.layer_names(ref)
        return contraction(self.ideal, names, budget)

    def subfield(self, ref: LayerRef, budget: Budget | None = None) -> "FieldPresentation":
        names = self.layer_names(ref)
        ideal = self.layer_ideal(names, budget)
        k = self.tower.index(names) if names in self.tower else -1
        tower = [layer for layer in self.tower[:k]] if k > 0 else []
        sub = FieldPresentation(self.p, names, ideal.generators, tower, self.assert_prime)
        return sub

    # -- derived invariants ---------------------------------------------------
    def dimension(self, budget: Budget | None = None) -> int:
        if self._dim is None:
            self._dim = krull_dimension(self.ideal, budget)
        return self._dim

    @property
    def imperfect_exponent(self) -> int:
        # [L : L^p] = p^trdeg for fields finitely generated over a perfect field
        return self.dimension()

    def is_finite(self, budget: Budget | None = None) -> bool:
        return self.dimension(budget) == 0

    def is_rational(self) -> bool:
        """True when there are no relations, i.e. L = F_p(generators)."""
        return not self.relations

    # -- elements -------------------------------------------------------------
    def reduce(self, f: MultiPoly, budget: Budget | None = None) -> MultiPoly:
        if not self.relations or f.is_zero():
            return f
        return normal_form(f, self.gb, budget=ensure(budget))

    @cached_property
    def gb(self) -> IdealHandle:
        return groebner_basis(self.ideal)

    def element(self, value, den=None) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, str):
            num, d = parse_rational(value, self.ring)
            return FieldElement(self, num, d)
        if isinstance(value, int):
            value = self.ring.const(value)
        if den is None:
            den = self.ring.one()
        elif isinstance(den, int):
            den = self.ring.const(den)
        return FieldElement(self, value, den)

    def gen(self, name: str) -> "FieldElement":
        return FieldElement(self, self.ring.gen(name), self.ring.one())

    def zero(self) -> "FieldElement":
        return FieldElement(self, self.ring.zero(), self.ring.one())

    def one(self) -> "FieldElement":
        return FieldElement(self, self.ring.one(), self.ring.one())

    # -- finite fields --------------------------------------------------------
    @cached_property
    def _finite_data(self):
        """(GF, images of generators, primitive element) for a finite presentation."""
        if self.dimension() != 0:
            raise ValueError("presentation is not a finite field")
        p = self.p
        if not self.generators:
            return GF(p), {}, self.ring.one()
        basis = standard_monomials(self.ideal)
        d = len(basis)
        index = {e: i for i, e in enumerate(basis)}

        def vec(f: MultiPoly):
            v = [0] * d
            for e, c in self.reduce(f).terms.items():
                v[index[e]] = c
            return v

        if d == 1:
            images = {n: self.reduce(self.ring.gen(n)).constant_coeff() for n in self.generators}
            return GF(p), images, self.ring.one()
        gens = [self.ring.gen(n) for n in self.generators]
        candidates = list(gens)
        for a in range(1, p):
            for g in gens[1:]:
                candidates.append(gens[0] + g.scale(a))
        for theta in candidates:
            powers = [self.ring.one()]
            for _ in range(d):
                powers.append(self.reduce(powers[-1] * theta))
            cols = [vec(x) for x in powers[:d]]
            A = [[cols[j][i] for j in range(d)] for i in range(d)]
            # theta is primitive iff 1, theta, .., theta^(d-1) are independent
            if rank_mod_p(A, p) < d:
                continue
            sol = solve_mod_p(A, vec(powers[d]), p)
            modulus = [(-c) % p for c in sol] + [1]
            F = GF(p, modulus)
            images = {n: tuple(solve_mod_p(A, vec(g), p)) for n, g in zip(self.generators, gens)}
            return F, images, theta
        raise ValueError("no primitive element found")

    def from_gf(self, a) -> "FieldElement":
        F, _, theta = self._finite_data
        if F.degree == 1:
            return self.element(int(a))
        acc = self.ring.zero()
        power = self.ring.one()
        for c in a:
            acc = acc + power.scale(c)
            power = self.reduce(power * theta)
        return self.element(acc)

    def finite_field(self) -> GF:
        return self._finite_data[0]

    def to_gf(self, x: "FieldElement"):
        F, images, _ = self._finite_data
        num = _eval_gf(F, x.num, images)
        den = _eval_gf(F, x.den, images)
        return F.mul(num, F.inv(den))


def _eval_gf(F: GF, f: MultiPoly, images: Dict[str, object]):
    names = f.ring.names
    acc = F.zero
    for e, c in f.terms.items():
        term = F.from_int(c)
        for n, k in zip(names, e):
            if k:
                term = F.mul(term, F.pow(images[n], k))
        acc = F.add(acc, term)
    return acc


class FieldElement:
    """num/den with num, den in F_p[X] reduced modulo P (den not in P)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FieldPresentation, num: MultiPoly, den: MultiPoly):
        num = field.reduce(num.to_ring(field.ring))
        den = field.reduce(den.to_ring(field.ring))
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes in the field")
        if num.is_zero():
            den = field.ring.one()
        else:
            num, den = _cancel(num, den)
            if field.relations and not den.is_constant() and field.dimension() == 0:
                num, den = _invert_finite(field, num, den), field.ring.one()
        # normalise the leading coefficient of the denominator to 1
        p = field.p
        lead = den.sorted_terms()[0][1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            num, den = num.scale(inv), den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, self.field.ring.const(other), self.field.ring.one())
        if isinstance(other, MultiPoly):
            return FieldElement(self.field, other, self.field.ring.one())
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FieldElement(self.field, self.num + o.num, self.den)
        return FieldElement(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.reduce(self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"FieldElement({self})"


def _cancel(num: MultiPoly, den: MultiPoly):
    """Cheap cancellation: common monomial content, then exact divisibility."""
    n = num.ring.nvars
    lo = [min(e[i] for e in list(num.terms) + list(den.terms)) for i in range(n)]
    if any(lo):
        shift = tuple(lo)
        num = MultiPoly(num.ring, {tuple(a - b for a, b in zip(e, shift)): c for e, c in num.terms.items()})
        den = MultiPoly(den.ring, {tuple(a - b for a, b in zip(e, shift)): c for e, c in den.terms.items()})
    if den.is_constant():
        return num, den
    q, r = divide_exact(num, den)
    if r.is_zero():
        return q, den.ring.one()
    if len(num) <= len(den) and not num.is_constant():
        q, r = divide_exact(den, num)
        if r.is_zero():
            return num.ring.one(), q
    return num, den


def _invert_finite(field: FieldPresentation, num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """num/den as a single polynomial in a zero-dimensional quotient."""
    basis = standard_monomials(field.ideal)
    index = {e: i for i, e in enumerate(basis)}
    d = len(basis)
    ring = field.ring
    cols = []
    for e in basis:
        prod = field.reduce(den * ring.monomial(e))
        v = [0] * d
        for m, c in prod.terms.items():
            v[index[m]] = c
        cols.append(v)
    A = [[cols[j][i] for j in range(d)] for i in range(d)]
    target = [0] * d
    for m, c in field.reduce(num).terms.items():
        target[index[m]] = c
    sol = solve_mod_p(A, target, field.p)
    if sol is None:
        raise ZeroDivisionError("denominator is a zero divisor")
    return MultiPoly(ring, {e: c for e, c in zip(basis, sol) if c})


def transcendence_degree(L: FieldPresentation, over: LayerRef = None, budget: Budget | None = None) -> int:
    """trdeg of L over a tower layer, as a difference of Krull dimensions."""
    budget = ensure(budget)
    names = L.layer_names(over)
    if not L.is_declared_layer(names):
        raise ValueError(f"{list(names)} is not a declared tower layer")
    top = krull_dimension(L.ideal, budget)
    bottom = krull_dimension(contraction(L.ideal, names, budget), budget) if names else 0
    return top - bottom
