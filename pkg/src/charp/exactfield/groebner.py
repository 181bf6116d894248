"""Buchberger's algorithm and the ideal operations built on it.

Bases are computed over F_p (denominators are always cleared before a
polynomial reaches this module).  Orders are named by strings:

``"grevlex"``, ``"lex"`` or ``"block:k1,k2,..."`` (consecutive blocks of
variables, each compared by grevlex, earlier blocks dominating).
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..budget import Budget, ensure
from .poly import Exp, MultiPoly, PolyRing

DEFAULT_ORDER = "grevlex"


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@lru_cache(maxsize=None)
def order_key(order: str, nvars: int) -> Callable[[Exp], tuple]:
    if order == "grevlex":
        return _grevlex_key
    if order == "lex":
        return lambda e: e
    if order.startswith("block:"):
        sizes = [int(s) for s in order[6:].split(",") if s]
        if sum(sizes) != nvars:
            raise ValueError(f"block sizes {sizes} do not cover {nvars} variables")
        cuts = list(itertools.accumulate([0] + sizes))
        spans = list(zip(cuts, cuts[1:]))

        def key(e):
            return tuple(_grevlex_key(e[a:b]) for a, b in spans)

        return key
    raise ValueError(f"unknown monomial order {order!r}")


def leading_exp(f: MultiPoly, order: str = DEFAULT_ORDER) -> Exp:
    return max(f.terms, key=order_key(order, f.ring.nvars))


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(f: Dict[Exp, int], basis, key, p, budget: Budget) -> Dict[Exp, int]:
    """Full normal form of ``f`` by the monic polynomials in ``basis``.

    ``basis`` holds (leading exponent, terms) pairs.
    """
    f = dict(f)
    rem: Dict[Exp, int] = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for glm, gterms in basis:
            if _divides(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                get = f.get
                for e, v in gterms.items():
                    ne = tuple(x + y for x, y in zip(e, shift))
                    nv = (get(ne, 0) - c * v) % p
                    if nv:
                        f[ne] = nv
                    else:
                        f.pop(ne, None)
                budget.spend(len(gterms))
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _monic(terms, key, p):
    lm = max(terms, key=key)
    inv = pow(terms[lm], p - 2, p)
    return lm, {e: c * inv % p for e, c in terms.items()}


def _buchberger(polys: List[Dict[Exp, int]], nvars: int, order: str, p: int, budget: Budget):
    key = order_key(order, nvars)
    G: List[Tuple[Exp, Dict[Exp, int]]] = []
    pairs = set()

    def lcm(a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def add(terms):
        lm, terms = _monic(terms, key, p)
        j = len(G)
        G.append((lm, terms))
        for i in range(j):
            if G[i] is not None:
                pairs.add((i, j))

    for f in sorted((f for f in polys if f), key=lambda t: key(max(t, key=key))):
        r = _reduce(f, [g for g in G if g is not None], key, p, budget)
        if r:
            if all(x == 0 for x in max(r, key=key)):
                return [(tuple([0] * nvars), {tuple([0] * nvars): 1})]
            add(r)

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(lcm(G[ij[0]][0], G[ij[1]][0])), ij))
        pairs.discard((i, j))
        li, fi = G[i]
        lj, fj = G[j]
        m = lcm(li, lj)
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(G[k][0], m):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    chain = True
                    break
        if chain:
            continue
        si = tuple(x - y for x, y in zip(m, li))
        sj = tuple(x - y for x, y in zip(m, lj))
        s: Dict[Exp, int] = {}
        for e, c in fi.items():
            s[tuple(x + y for x, y in zip(e, si))] = c
        for e, c in fj.items():
            ne = tuple(x + y for x, y in zip(e, sj))
            v = (s.get(ne, 0) - c) % p
            if v:
                s[ne] = v
            else:
                s.pop(ne, None)
        budget.spend(len(fi) + len(fj))
        r = _reduce(s, G, key, p, budget)
        if r:
            if all(x == 0 for x in max(r, key=key)):
                return [(tuple([0] * nvars), {tuple([0] * nvars): 1})]
            add(r)

    # minimalize then interreduce
    minimal = []
    for idx, (lm, terms) in enumerate(G):
        if any(
            _divides(G[k][0], lm) and (G[k][0] != lm or k < idx)
            for k in range(len(G))
            if k != idx
        ):
            continue
        minimal.append((lm, terms))
    reduced = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [g for k, g in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in terms.items() if e != lm}
        tail = _reduce(tail, others, key, p, budget)
        tail[lm] = 1
        reduced.append((lm, tail))
    reduced.sort(key=lambda g: key(g[0]), reverse=True)
    return reduced


_BASIS_CACHE: Dict[tuple, tuple] = {}
_CACHE_LOCK = threading.Lock()
_CACHE_MAX = 20000


def _cached_basis(ring: PolyRing, gens, order: str, budget: Budget):
    # memo table only; results are pure functions of the key
    key = (ring, gens, order)
    hit = _BASIS_CACHE.get(key)
    if hit is not None:
        return hit
    basis = _buchberger([dict(g) for g in gens], ring.nvars, order, ring.p, budget)
    out = tuple(tuple(sorted(t.items())) for _, t in basis)
    with _CACHE_LOCK:
        if len(_BASIS_CACHE) > _CACHE_MAX:
            _BASIS_CACHE.clear()
        _BASIS_CACHE[key] = out
    return out


def _freeze(polys: Sequence[MultiPoly]):
    return tuple(sorted(set(tuple(sorted(f.terms.items())) for f in polys if not f.is_zero())))


@dataclass(frozen=True)
class IdealHandle:
    """An ideal of ``ring`` given by generators, optionally with its reduced basis."""

    ring: PolyRing
    generators: Tuple[MultiPoly, ...]
    basis: Optional[Tuple[MultiPoly, ...]] = None
    order: Optional[str] = None
    _lead: Tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def of(cls, ring: PolyRing, generators: Sequence[MultiPoly]) -> "IdealHandle":
        gens = tuple(g if isinstance(g, MultiPoly) else ring.parse(g) for g in generators)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator outside the ambient ring")
        return cls(ring, gens)

    def groebner(self, order: str = DEFAULT_ORDER, budget: Budget | None = None) -> "IdealHandle":
        return groebner_basis(self, order, budget)

    def reduce(self, f: MultiPoly, order: str = DEFAULT_ORDER, budget: Budget | None = None) -> MultiPoly:
        return normal_form(f, self, order, budget)

    def contains(self, f: MultiPoly, budget: Budget | None = None) -> bool:
        return ideal_membership(f, self, budget)

    def is_unit(self, budget: Budget | None = None) -> bool:
        gb = groebner_basis(self, DEFAULT_ORDER, budget)
        return any(g.is_constant() and not g.is_zero() for g in gb.basis)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def __add__(self, other: "IdealHandle") -> "IdealHandle":
        return IdealHandle.of(self.ring, self.generators + other.generators)

    def with_generators(self, more: Sequence[MultiPoly]) -> "IdealHandle":
        return IdealHandle.of(self.ring, self.generators + tuple(more))

    def to_ring(self, ring: PolyRing) -> "IdealHandle":
        return IdealHandle.of(ring, [g.to_ring(ring) for g in self.generators])

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def groebner_basis(ideal: IdealHandle, order: str = DEFAULT_ORDER, budget: Budget | None = None) -> IdealHandle:
    """Reduced Groebner basis, sorted by decreasing leading monomial."""
    if ideal.basis is not None and ideal.order == order:
        return ideal
    budget = ensure(budget)
    ring = ideal.ring
    frozen = _freeze(ideal.generators)
    raw = _cached_basis(ring, frozen, order, budget)
    basis = tuple(MultiPoly(ring, dict(t)) for t in raw)
    key = order_key(order, ring.nvars)
    lead = tuple(max(b.terms, key=key) for b in basis)
    return IdealHandle(ring, ideal.generators, basis, order, lead)


def _basis_pairs(gb: IdealHandle):
    key = order_key(gb.order, gb.ring.nvars)
    return key, [(lm, b.terms) for lm, b in zip(gb._lead, gb.basis)]


def normal_form(f: MultiPoly, ideal: IdealHandle, order: str = DEFAULT_ORDER, budget: Budget | None = None) -> MultiPoly:
    budget = ensure(budget)
    gb = groebner_basis(ideal, order, budget)
    key, pairs = _basis_pairs(gb)
    return MultiPoly(f.ring, _reduce(f.terms, pairs, key, f.ring.p, budget))


def ideal_membership(f: MultiPoly, ideal: IdealHandle, budget: Budget | None = None) -> bool:
    if f.is_zero():
        return True
    return normal_form(f, ideal, DEFAULT_ORDER, budget).is_zero()


def leading_monomials(ideal: IdealHandle, order: str = DEFAULT_ORDER, budget: Budget | None = None):
    return groebner_basis(ideal, order, budget)._lead


def krull_dimension(ideal: IdealHandle, budget: Budget | None = None) -> int:
    """Dimension of ring/ideal from the combinatorics of leading monomials.

    The answer is the size of a largest set of variables containing the
    support of no leading monomial.  Returns -1 for the unit ideal.
    """
    gb = groebner_basis(ideal, DEFAULT_ORDER, budget)
    if any(g.is_constant() and not g.is_zero() for g in gb.basis):
        return -1
    n = ideal.ring.nvars
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in gb._lead]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def independent_variables(ideal: IdealHandle, budget: Budget | None = None) -> Tuple[str, ...]:
    """A maximal independent set of variables modulo ``ideal`` (largest first found)."""
    gb = groebner_basis(ideal, DEFAULT_ORDER, budget)
    n = ideal.ring.nvars
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in gb._lead]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return tuple(ideal.ring.names[i] for i in subset)
    return ()


def eliminate(ideal: IdealHandle, names: Sequence[str], budget: Budget | None = None) -> IdealHandle:
    """The contraction of ``ideal`` to the polynomial ring in the other variables."""
    ring = ideal.ring
    drop = [n for n in ring.names if n in set(names)]
    keep = [n for n in ring.names if n not in set(names)]
    big = PolyRing(ring.p, drop + keep)
    small = PolyRing(ring.p, keep)
    order = f"block:{len(drop)},{len(keep)}" if drop and keep else "grevlex"
    lifted = IdealHandle.of(big, [g.to_ring(big) for g in ideal.generators])
    gb = groebner_basis(lifted, order, budget)
    k = len(drop)
    out = []
    for lm, g in zip(gb._lead, gb.basis):
        if all(x == 0 for x in lm[:k]):
            out.append(MultiPoly(small, {e[k:]: c for e, c in g.terms.items()}))
    return IdealHandle.of(small, out)


def contraction(ideal: IdealHandle, keep: Sequence[str], budget: Budget | None = None) -> IdealHandle:
    return eliminate(ideal, [n for n in ideal.ring.names if n not in set(keep)], budget)


def _fresh(ring: PolyRing, stem: str) -> str:
    name = stem
    i = 0
    while name in ring.names:
        i += 1
        name = f"{stem}{i}"
    return name


def intersect(a: IdealHandle, b: IdealHandle, budget: Budget | None = None) -> IdealHandle:
    ring = a.ring
    tname = _fresh(ring, "_w")
    big = ring.extend([tname], front=True)
    t = big.gen(tname)
    gens = [t * g.to_ring(big) for g in a.generators] + [(1 - t) * g.to_ring(big) for g in b.generators]
    res = eliminate(IdealHandle.of(big, gens), [tname], budget)
    return res.to_ring(ring)


def quotient(ideal: IdealHandle, f: MultiPoly, budget: Budget | None = None) -> IdealHandle:
    """The colon ideal ``ideal : f``."""
    if f.is_zero():
        return IdealHandle.of(ideal.ring, [ideal.ring.one()])
    inter = intersect(ideal, IdealHandle.of(ideal.ring, [f]), budget)
    out = []
    for g in inter.generators:
        q, r = divide_exact(g, f)
        if not r.is_zero():
            raise ArithmeticError("intersection element not divisible by f")
        out.append(q)
    return IdealHandle.of(ideal.ring, out)


def saturation(ideal: IdealHandle, f: MultiPoly, budget: Budget | None = None) -> IdealHandle:
    """``ideal : f^infinity`` via the Rabinowitsch trick."""
    ring = ideal.ring
    tname = _fresh(ring, "_s")
    big = ring.extend([tname], front=True)
    t = big.gen(tname)
    gens = [g.to_ring(big) for g in ideal.generators] + [1 - t * f.to_ring(big)]
    return eliminate(IdealHandle.of(big, gens), [tname], budget).to_ring(ring)


def divide_exact(f: MultiPoly, g: MultiPoly):
    """Multivariate division of f by the single polynomial g (grevlex)."""
    ring = f.ring
    key = order_key("grevlex", ring.nvars)
    glm, gt = _monic(g.terms, key, ring.p)
    lc_inv = pow(g.terms[glm], ring.p - 2, ring.p)
    rem = dict(f.terms)
    quo: Dict[Exp, int] = {}
    out_rem: Dict[Exp, int] = {}
    p = ring.p
    while rem:
        lm = max(rem, key=key)
        c = rem[lm]
        if _divides(glm, lm):
            shift = tuple(x - y for x, y in zip(lm, glm))
            quo[shift] = (quo.get(shift, 0) + c * lc_inv) % p
            for e, v in gt.items():
                ne = tuple(x + y for x, y in zip(e, shift))
                nv = (rem.get(ne, 0) - c * v) % p
                if nv:
                    rem[ne] = nv
                else:
                    rem.pop(ne, None)
        else:
            out_rem[lm] = c
            del rem[lm]
    return MultiPoly(ring, {e: c for e, c in quo.items() if c}), MultiPoly(ring, out_rem)


def standard_monomials(ideal: IdealHandle, budget: Budget | None = None) -> List[Exp]:
    """Monomials outside the leading ideal; only for zero-dimensional ideals."""
    gb = groebner_basis(ideal, DEFAULT_ORDER, budget)
    n = ideal.ring.nvars
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in gb._lead if lm[i] and all(k == 0 for j, k in enumerate(lm) if j != i)]
        if not pure:
            raise ValueError("ideal is not zero-dimensional")
        bounds.append(min(pure))
    out = []
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(lm, e) for lm in gb._lead):
            out.append(tuple(e))
    key = order_key(DEFAULT_ORDER, n)
    out.sort(key=key)
    return out
