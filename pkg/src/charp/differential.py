"""Kaehler differentials of presented fields.

For L = Frac(F_p[X]/P) the module Omega_L is the L-vector space on the
symbols dX_i modulo the Jacobian rows of the generators of P.  Relative
modules Omega_{L/F} add the unit rows dX_f = 0 for the generators of F.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .budget import Budget, ensure
from .errors import UnsupportedBase
from .exactfield.groebner import IdealHandle
from .exactfield.linalg import rank
from .exactfield.zech import ZERO, zech_field
from .exactfield.poly import MultiPoly
from .exactfield.presentation import FieldElement, FieldPresentation, LayerRef, transcendence_degree


@dataclass(frozen=True)
class DifferentialModule:
    """Generators d(g) for each generator g, relation rows over L."""

    field: FieldPresentation
    symbols: Tuple[str, ...]
    relations: Tuple[Tuple[MultiPoly, ...], ...]
    relative_to: Tuple[str, ...] = ()

    @property
    def ideal(self) -> Optional[IdealHandle]:
        return self.field.gb if self.field.relations else None

    def relation_rank(self, budget: Budget | None = None) -> int:
        if not self.relations:
            return 0
        return rank([list(r) for r in self.relations], self.ideal, budget)

    def dimension(self, budget: Budget | None = None) -> int:
        return len(self.symbols) - self.relation_rank(budget)

    def vector(self, x: FieldElement) -> List[MultiPoly]:
        return element_differential(x)

    def span_rank(self, vectors: Sequence[Sequence[MultiPoly]], budget: Budget | None = None) -> int:
        """Dimension of the span of the images of ``vectors`` in the module."""
        base = [list(r) for r in self.relations]
        vecs = [list(v) for v in vectors]
        if not vecs:
            return 0
        return rank(base + vecs, self.ideal, budget) - (rank(base, self.ideal, budget) if base else 0)

    def to_json(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "relations": [[str(e) for e in row] for row in self.relations],
            "relative_to": list(self.relative_to),
        }


def element_differential(x: FieldElement) -> List[MultiPoly]:
    """dx on the basis dX_i, multiplied by den(x)^2 (which does not change spans)."""
    L = x.field
    a, b = x.num, x.den
    if b.is_constant():
        inv = pow(b.constant_coeff(), L.p - 2, L.p)
        return [L.reduce(a.diff(n).scale(inv)) for n in L.generators]
    return [L.reduce(b * a.diff(n) - a * b.diff(n)) for n in L.generators]


def absolute_module(L: FieldPresentation) -> DifferentialModule:
    rows = tuple(tuple(f.diff(n) for n in L.generators) for f in L.relations)
    return DifferentialModule(L, tuple(f"d({g})" for g in L.generators), rows)


def relative_module(L: FieldPresentation, F: LayerRef) -> DifferentialModule:
    names = L.layer_names(F)
    if not L.is_declared_layer(names):
        raise ValueError(f"{list(names)} is not a declared tower layer")
    ring = L.ring
    units = []
    for n in names:
        units.append(tuple(ring.one() if m == n else ring.zero() for m in L.generators))
    base = absolute_module(L)
    return DifferentialModule(L, base.symbols, base.relations + tuple(units), names)


def _as_elements(elements, L: FieldPresentation) -> List[FieldElement]:
    return [L.element(e) for e in elements]


def p_independent(elements, L: FieldPresentation, over: LayerRef = None, budget: Budget | None = None) -> bool:
    """True iff the differentials of ``elements`` are L-linearly independent in Omega_L (or Omega_{L/F})."""
    budget = ensure(budget)
    elems = _as_elements(elements, L)
    if not elems:
        return True
    module = relative_module(L, over) if over is not None else absolute_module(L)
    vecs = [element_differential(x) for x in elems]
    return module.span_rank(vecs, budget) == len(vecs)


def p_basis(L: FieldPresentation, budget: Budget | None = None) -> List[FieldElement]:
    """Greedy choice of generators whose differentials form a basis of Omega_L."""
    budget = ensure(budget)
    module = absolute_module(L)
    ring = L.ring
    chosen: List[str] = []
    rows = [list(r) for r in module.relations]
    current = rank(rows, module.ideal, budget) if rows else 0
    for n in L.generators:
        unit = [ring.one() if m == n else ring.zero() for m in L.generators]
        r = rank(rows + [unit], module.ideal, budget)
        if r > current:
            rows.append(unit)
            current = r
            chosen.append(n)
    return [L.gen(n) for n in chosen]


def is_separable_ext(L: FieldPresentation, F: LayerRef, budget: Budget | None = None) -> bool:
    return inseparability_degree(L, F, budget) == 0


def inseparability_degree(L: FieldPresentation, F: LayerRef, budget: Budget | None = None) -> int:
    """dim ker(Omega_F (x) L -> Omega_L) = dim Omega_{L/F} - trdeg(L/F)."""
    budget = ensure(budget)
    dim = relative_module(L, F).dimension(budget)
    return dim - transcendence_degree(L, F, budget)


def almost_separable(L: FieldPresentation, F: LayerRef, budget: Budget | None = None) -> bool:
    """Kernel of Omega_F (x) L -> Omega_L has dimension at most one."""
    return inseparability_degree(L, F, budget) <= 1


def almost_separable_on_basis(L: FieldPresentation, F: LayerRef, budget: Budget | None = None) -> bool:
    """The p-basis form: every nonempty B0 in a p-basis B of F loses at most one element in L."""
    budget = ensure(budget)
    sub = L.subfield(F, budget)
    B = [L.element(x.num.to_ring(L.ring)) for x in p_basis(sub, budget)]
    for size in range(1, len(B) + 1):
        for B0 in itertools.combinations(B, size):
            ok = any(p_independent([b for j, b in enumerate(B0) if j != i], L, budget=budget)
                     for i in range(len(B0)))
            if not ok:
                return False
    return True


def p_independent_oracle(elements, L: FieldPresentation, budget: Budget | None = None) -> bool:
    """Independent p-independence test for L = F_p(u_1..u_n), by counting a fibre degree.

    s_1..s_k are p-independent iff [L : L^p(s)] = p^(n-k).
    """
    elems = _as_elements(elements, L)
    if len(elems) > len(L.generators):
        return False
    return fibre_log_degree(elems, L, budget) == len(L.generators) - len(elems)


ORACLE_POINTS = 6


def fibre_log_degree(elements, L: FieldPresentation, budget: Budget | None = None, seed: int = 0) -> int:
    """log_p [L : L^p(elements)] for L = F_p(u_1..u_n).

    L is free over L^p = F_p(v), v = u^p, on the monomials u^e with e in
    [0, p)^n, and L^p(s) is spanned over L^p by the s^alpha, alpha in [0, p)^k.
    Writing each s^alpha in the basis u^e gives a matrix over F_p(v) whose rank
    is [L^p(s) : L^p].  The rank is read off at random points v = b of a large
    GF(p^d): a rank reached at some point is a lower bound, so full rank is an
    exact certificate and a deficient rank survives only with probability
    below deg(minor)/p^d per point.
    """
    budget = ensure(budget)
    if not L.is_rational():
        raise UnsupportedBase("the oracle needs a rational function field F_p(u_1..u_n)")
    elems = _as_elements(elements, L)
    n = len(L.generators)
    p = L.p
    if n == 0:
        return 0
    # s = num/den and num*den^(p-1) differ by the factor den^p in L^p
    polys = [x.num * x.den ** (p - 1) for x in elems]
    F = zech_field(p)
    rng = random.Random(seed)
    best = 0
    for _ in range(ORACLE_POINTS):
        b = [rng.randrange(F.order) for _ in range(n)]
        r = _span_rank_at(polys, n, p, F, b, budget)
        best = max(best, r)
        if best == p ** len(polys):
            break
    log = 0
    while best % p == 0 and best > 1:
        best //= p
        log += 1
    if best != 1:
        raise ArithmeticError("span dimension is not a power of p at any sampled point")
    return n - log


def _span_rank_at(polys, n: int, p: int, F, b: Sequence[int], budget: Budget) -> int:
    """Rank over GF(p^d) of the s^alpha in A_b = GF(p^d)[u]/(u_i^p - b_i)."""
    size = p ** n
    exps = list(itertools.product(range(p), repeat=n))
    index = {e: i for i, e in enumerate(exps)}

    def image(f: MultiPoly):
        vec = [ZERO] * size
        for m, c in f.terms.items():
            e = tuple(x % p for x in m)
            w = sum(bi * (x // p) for bi, x in zip(b, m)) % F.order
            i = index[e]
            vec[i] = F.add(vec[i], F.mul(F.from_int(int(c)), w))
        return vec

    # products in A_b: exponent sums past p wrap around with a factor b_i
    table = []
    for e in exps:
        row = []
        for f in exps:
            s = [x + y for x, y in zip(e, f)]
            w = sum(bi for bi, x in zip(b, s) if x >= p) % F.order
            row.append((index[tuple(x - p if x >= p else x for x in s)], w))
        table.append(row)

    def mul(x, y):
        budget.spend(size)
        out = [ZERO] * size
        for i, xi in enumerate(x):
            if xi == ZERO:
                continue
            trow = table[i]
            for j, yj in enumerate(y):
                if yj == ZERO:
                    continue
                k, w = trow[j]
                out[k] = F.add(out[k], (xi + yj + w) % F.order)
        return out

    gens = [image(f) for f in polys]
    one = [ZERO] * size
    one[0] = 0
    rows = [one]
    for g in gens:
        # rows for alpha with this coordinate 0..p-1, built by repeated products
        layer = list(rows)
        cur = rows
        for _ in range(p - 1):
            cur = [mul(r, g) for r in cur]
            layer.extend(cur)
        rows = layer
    budget.spend(len(rows) * size)
    return F.rank(rows)


@dataclass(frozen=True, eq=False)
class CotangentFibre:
    """Omega_O (x) kappa for a place: the symbols dX_i modulo the Jacobian of I, over kappa."""

    place: object
    residue_field: FieldPresentation
    jacobian: Tuple[Tuple[MultiPoly, ...], ...]

    @property
    def ideal(self) -> Optional[IdealHandle]:
        return self.residue_field.gb if self.residue_field.relations else None

    def jacobian_rank(self, budget: Budget | None = None) -> int:
        if not self.jacobian:
            return 0
        return rank([list(r) for r in self.jacobian], self.ideal, budget)

    def dimension(self, budget: Budget | None = None) -> int:
        return len(self.residue_field.generators) - self.jacobian_rank(budget)

    def class_of(self, f, budget: Budget | None = None) -> List[MultiPoly]:
        """Coordinates of df (x) 1, up to the unit factor b^2 of the chosen representative a/b."""
        from .valuation import local_representative

        rep = local_representative(self.place, f, budget)
        if rep is None:
            raise ValueError("element is not in the valuation ring")
        a, b = rep
        kappa = self.residue_field
        a, b = a.to_ring(kappa.ring), b.to_ring(kappa.ring)
        return [kappa.reduce(b * a.diff(n) - a * b.diff(n)) for n in kappa.generators]

    def span_rank(self, vectors: Sequence[Sequence[MultiPoly]], budget: Budget | None = None) -> int:
        vecs = [list(v) for v in vectors]
        if not vecs:
            return 0
        base = [list(r) for r in self.jacobian]
        return rank(base + vecs, self.ideal, budget) - self.jacobian_rank(budget)


def cotangent_fibre(place) -> CotangentFibre:
    kappa = place.residue_field
    rows = tuple(tuple(kappa.reduce(f.diff(n).to_ring(kappa.ring)) for n in place.algebra.generators)
                 for f in place.algebra.relations)
    return CotangentFibre(place, kappa, rows)
