"""Primality certificates for defining ideals.

Three routes are accepted:

* ``tower``: the relations form a triangular chain f_1, ..., f_k where f_i
  is monic in a new variable y_i.  Each step is certified irreducible over
  the fraction field of the previous quotient, either because it is linear
  in y_i, because it has the shape y_i^(p^m) - c with c not a p-th power,
  or by a specialization at a smooth F_q-rational point of the previous
  quotient where f_i stays irreducible.  A principal ideal is the k = 1
  case.
* ``asserted``: supplied by the caller and audited (1 not in I, no zero
  divisor among 100 random products).
* ``finite``: a zero-dimensional quotient of dimension d over F_p with an
  element whose minimal polynomial is irreducible of degree d.
* ``rational``: no relations at all.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple

from ..budget import Budget
from ..errors import NotPrime
from .finite import GF, conway_like_modulus, is_irreducible, roots, trim
from .groebner import IdealHandle, groebner_basis, ideal_membership, krull_dimension, normal_form, standard_monomials
from .linalg import rank_mod_p, solve_mod_p
from .poly import MultiPoly, PolyRing

_POINT_CAP = 400


def certify_prime(ring: PolyRing, relations: Sequence[MultiPoly], asserted: bool, budget: Budget) -> str:
    if not relations:
        return "rational"
    ideal = IdealHandle.of(ring, list(relations))
    if ideal.is_unit(budget):
        raise NotPrime("defining ideal is the unit ideal")
    if _tower_certificate(ring, relations, budget):
        return "tower"
    lex = groebner_basis(ideal, "lex", budget).basis
    if set(lex) != set(relations) and _tower_certificate(ring, lex, budget):
        return "tower"
    if krull_dimension(ideal, budget) == 0 and _finite_certificate(ring, ideal, budget):
        return "finite"
    if asserted:
        audit_prime(ring, relations, budget)
        return "asserted"
    raise NotPrime("primality could not be certified; mark the presentation with assert_prime to audit it instead")


def _tower_certificate(ring: PolyRing, relations, budget: Budget) -> bool:
    chain = triangular_chain(relations)
    if chain is None:
        return False
    for i in range(len(chain)):
        verdict = _certify_step(ring, chain, i, budget)
        if verdict is False:
            raise NotPrime(f"relation {chain[i][0]} factors over the previous layer")
        if verdict is None:
            return False
    return True


def _lead_in(f: MultiPoly, name: str) -> Tuple[int, MultiPoly]:
    coeffs = f.coeffs_in(name)
    k = max(coeffs)
    return k, coeffs[k]


def triangular_chain(relations: Sequence[MultiPoly]) -> Optional[List[Tuple[MultiPoly, str]]]:
    """Order the relations as (f_i, y_i) with f_i monic in y_i and y_i new."""
    rels = list(relations)
    if len(rels) > 5:
        return None
    for perm in itertools.permutations(rels):
        chain = _assign(list(perm), [], set())
        if chain is not None:
            return chain
    return None


def _assign(rest, chain, used):
    if not rest:
        return chain
    f = rest[0]
    later_vars = set()
    for g in rest[1:]:
        later_vars |= set(g.variables())
    for y in f.variables():
        if y in used:
            continue
        k, lc = _lead_in(f, y)
        if k < 1 or not lc.is_constant():
            continue
        # y must not occur in earlier relations
        if any(y in g.variables() for g, _ in chain):
            continue
        out = _assign(rest[1:], chain + [(f, y)], used | {y})
        if out is not None:
            return out
    return None


def _certify_step(ring: PolyRing, chain, i: int, budget: Budget):
    """True (irreducible), False (reducible) or None (undecided)."""
    f, y = chain[i]
    deg = f.degree(y)
    if deg == 1:
        return True
    p = ring.p
    coeffs = f.coeffs_in(y)
    if i == 0 and f.variables() == (y,):
        F = GF(p)
        dense = trim(F, [coeffs[k].constant_coeff() if k in coeffs else 0 for k in range(deg + 1)])
        return is_irreducible(F, dense)
    q = deg
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    if q == 1 and set(coeffs) == {0, deg}:
        # y^(p^m) - c: irreducible iff c is not a p-th power
        from .factor import is_pth_power
        from .presentation import FieldPresentation

        lc = coeffs[deg].constant_coeff()
        c = -(coeffs[0].scale(pow(lc, p - 2, p)))
        prev = [g for g, _ in chain[:i]]
        used = set(c.variables())
        for g in prev:
            used |= set(g.variables())
        names = [n for n in ring.names if n in used]
        sub = FieldPresentation(p, names, [g.to_ring(PolyRing(p, names)) for g in prev])
        if not names:
            return False
        root = is_pth_power(sub.element(c.to_ring(sub.ring)), sub, budget=budget)
        return root is None
    return _specialization_certificate(ring, chain, i, budget)


def _eval_univariate(F: GF, f: MultiPoly, var: str, point: Dict[str, object]) -> list:
    names = f.ring.names
    vi = names.index(var)
    coeffs = {}
    for e, c in f.terms.items():
        term = F.from_int(c)
        for n, k in zip(names, e):
            if k and n != var:
                term = F.mul(term, F.pow(point[n], k))
        coeffs[e[vi]] = F.add(coeffs.get(e[vi], F.zero), term)
    top = max(coeffs) if coeffs else -1
    return trim(F, [coeffs.get(j, F.zero) for j in range(top + 1)])


def _eval_point(F: GF, f: MultiPoly, point: Dict[str, object]):
    acc = F.zero
    for e, c in f.terms.items():
        term = F.from_int(c)
        for n, k in zip(f.ring.names, e):
            if k:
                term = F.mul(term, F.pow(point[n], k))
        acc = F.add(acc, term)
    return acc


def _rank_gf(F: GF, rows: List[list]) -> int:
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if M else 0
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if not F.is_zero(M[i][c])), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(r + 1, m):
            if not F.is_zero(M[i][c]):
                fac = M[i][c]
                M[i] = [F.sub(x, F.mul(fac, yv)) for x, yv in zip(M[i], M[r])]
        r += 1
    return r


def _specialization_certificate(ring: PolyRing, chain, i: int, budget: Budget):
    f, y = chain[i]
    prev = chain[:i]
    bound = {v for _, v in prev} | {y}
    involved = set(f.variables())
    for g, _ in prev:
        involved |= set(g.variables())
    free = [n for n in ring.names if n in involved and n not in bound]
    jac = [[g.diff(n) for n in ring.names] for g, _ in prev]
    rng = random.Random(1729 + i)
    for k in (1, 2, 3):
        F = GF(ring.p) if k == 1 else GF(ring.p, conway_like_modulus(ring.p, k))
        elems = F.elements()
        total = len(elems) ** len(free)
        if total <= _POINT_CAP:
            points = itertools.product(elems, repeat=len(free))
        else:
            points = (tuple(rng.choice(elems) for _ in free) for _ in range(_POINT_CAP))
        for vals in points:
            budget.spend(len(free) + 1)
            for point in _extend(F, dict(zip(free, vals)), prev):
                if prev:
                    full = {n: point.get(n, F.zero) for n in ring.names}
                    rows = [[_eval_point(F, d, full) for d in row] for row in jac]
                    if _rank_gf(F, rows) < len(prev):
                        continue
                spec = _eval_univariate(F, f, y, {n: point.get(n, F.zero) for n in ring.names})
                if len(spec) - 1 == f.degree(y) and is_irreducible(F, spec):
                    return True
    return None


def _extend(F: GF, point: Dict[str, object], prev):
    """All F-rational extensions of ``point`` through the earlier chain steps."""
    if not prev:
        yield point
        return
    (g, v), rest = prev[0], prev[1:]
    full = {n: point.get(n, F.zero) for n in g.ring.names}
    spec = _eval_univariate(F, g, v, full)
    if len(spec) < 2:
        return
    for r in roots(F, spec):
        yield from _extend(F, {**point, v: r}, rest)


def _finite_certificate(ring: PolyRing, ideal: IdealHandle, budget: Budget) -> bool:
    """Look for a primitive element with irreducible minimal polynomial."""
    basis = standard_monomials(ideal, budget)
    d = len(basis)
    index = {e: i for i, e in enumerate(basis)}
    p = ring.p

    def vec(f):
        v = [0] * d
        for e, c in normal_form(f, ideal, budget=budget).terms.items():
            v[index[e]] = c
        return v

    gens = ring.gens()
    candidates = list(gens)
    for a in range(1, p):
        for g in gens[1:]:
            candidates.append(gens[0] + g.scale(a))
    for theta in candidates[:40]:
        powers = [ring.one()]
        for _ in range(d):
            powers.append(normal_form(powers[-1] * theta, ideal, budget=budget))
        A = [[vec(x)[i] for x in powers[:d]] for i in range(d)]
        sol = solve_mod_p(A, vec(powers[d]), p)
        if sol is None:
            continue
        # the powers 1..theta^(d-1) must be independent for theta to be primitive
        if rank_mod_p(A, p) < d:
            continue
        mu = trim(GF(p), [(-c) % p for c in sol] + [1])
        if is_irreducible(GF(p), mu):
            return True
    return False


def audit_prime(ring: PolyRing, relations: Sequence[MultiPoly], budget: Budget, trials: int = 100,
                seed: int = 0) -> None:
    """Consistency audit for an asserted prime: no zero divisor among random products."""
    ideal = IdealHandle.of(ring, list(relations)).groebner(budget=budget)
    if ideal.is_unit(budget):
        raise NotPrime("defining ideal is the unit ideal")
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < trials and attempts < 20 * trials:
        attempts += 1
        a = _random_poly(ring, rng)
        b = _random_poly(ring, rng)
        if ideal_membership(a, ideal, budget) or ideal_membership(b, ideal, budget):
            continue
        if ideal_membership(a * b, ideal, budget):
            raise NotPrime(f"zero divisors found: ({a}) * ({b}) lies in the ideal")
        done += 1


def _random_poly(ring: PolyRing, rng: random.Random, degree: int = 3, terms: int = 3) -> MultiPoly:
    out = ring.zero()
    for _ in range(terms):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, degree)):
            if ring.nvars:
                e[rng.randrange(ring.nvars)] += 1
        out = out + ring.monomial(tuple(e), rng.randrange(1, ring.p))
    return out
