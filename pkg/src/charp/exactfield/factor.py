"""Univariate factorization over presented fields and p-th root extraction."""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Tuple

from ..budget import Budget, ensure
from ..errors import UnsupportedBase
from . import finite as ff
from .groebner import IdealHandle, _fresh, groebner_basis
from .linalg import rank
from .poly import MultiPoly, PolyRing
from .presentation import FieldElement, FieldPresentation


# ---------------------------------------------------------------------------
# p-th powers


def differential_vector(c: FieldElement) -> List[MultiPoly]:
    """Coordinates of dc on the dX_i, scaled by den^2 (b da - a db)."""
    a, b = c.num, c.den
    return [c.field.reduce(b * a.diff(n) - a * b.diff(n)) for n in c.field.generators]


def _dc_vanishes(c: FieldElement, budget: Budget) -> bool:
    L = c.field
    v = differential_vector(c)
    if all(x.is_zero() for x in v):
        return True
    jac = [r.jacobian_row() for r in L.relations]
    if not jac:
        return False
    ideal = L.gb if L.relations else None
    return rank(jac + [v], ideal, budget) == rank(jac, ideal, budget)


def is_pth_power(c: FieldElement, L: Optional[FieldPresentation] = None, budget: Budget | None = None) -> Optional[FieldElement]:
    """A p-th root of c in L, or None when c is not a p-th power."""
    budget = ensure(budget)
    L = L or c.field
    c = L.element(c) if not isinstance(c, FieldElement) else c
    if c.is_zero():
        return L.zero()
    if not L.generators:
        return c
    if not _dc_vanishes(c, budget):
        return None
    p = L.p
    a, b = c.num, c.den
    g = L.reduce(a * b ** (p - 1))
    if not L.relations:
        root = _root_of_pth_power_poly(g)
        if root is None:
            raise ArithmeticError("differential vanishes but exponents are not divisible by p")
        return FieldElement(L, root, b)
    y = _root_by_elimination(L, g, budget)
    return FieldElement(L, y.num, y.den * b)


def _root_of_pth_power_poly(g: MultiPoly) -> Optional[MultiPoly]:
    p = g.ring.p
    out = {}
    for e, c in g.terms.items():
        if any(k % p for k in e):
            return None
        out[tuple(k // p for k in e)] = c
    return MultiPoly(g.ring, out)


def _root_by_elimination(L: FieldPresentation, g: MultiPoly, budget: Budget) -> FieldElement:
    """Write g = d(X^p)/c(X^p) inside L and return d(X)/c(X).

    Works in F_p[X, Z, W] modulo P(X), W_i - X_i^p and Z - g, eliminating X
    with a block order X > Z > W; a basis element linear in Z gives the
    relation c(W) Z = d(W).
    """
    ring = L.ring
    p = L.p
    xs = list(ring.names)
    ws = []
    probe = ring
    for n in xs:
        w = _fresh(probe, f"w_{n}")
        ws.append(w)
        probe = probe.extend([w])
    z = _fresh(probe, "z_root")
    big = PolyRing(p, xs + [z] + ws)
    gens = [r.to_ring(big) for r in L.relations]
    gens += [big.gen(w) - big.gen(x) ** p for x, w in zip(xs, ws)]
    gens.append(big.gen(z) - g.to_ring(big))
    order = f"block:{len(xs)},1,{len(ws)}"
    gb = groebner_basis(IdealHandle.of(big, gens), order, budget)
    nx = len(xs)
    best = None
    for lm, h in zip(gb._lead, gb.basis):
        if any(lm[:nx]) or lm[nx] != 1:
            continue
        if h.degree(z) != 1:
            continue
        if best is None:
            best = h
    if best is None:
        raise ArithmeticError("no relation linear in the root variable was found")
    parts = best.coeffs_in(z)
    c = parts[1]
    d = -parts.get(0, big.zero())
    back = {w: x for x, w in zip(xs, ws)}
    ring_w = PolyRing(p, xs)
    c_x = _drop_to(c, back, ring_w)
    d_x = _drop_to(d, back, ring_w)
    return FieldElement(L, d_x, c_x)


def _drop_to(f: MultiPoly, mapping: Dict[str, str], target: PolyRing) -> MultiPoly:
    names = f.ring.names
    idx = {n: target.index(mapping[n]) for n in names if n in mapping}
    out = {}
    for e, c in f.terms.items():
        ne = [0] * target.nvars
        for n, k in zip(names, e):
            if k:
                if n not in idx:
                    raise ArithmeticError(f"unexpected variable {n} in eliminated relation")
                ne[idx[n]] += k
        out[tuple(ne)] = c
    return MultiPoly(target, out)


# ---------------------------------------------------------------------------
# factorization


def factor_univariate(f, base: FieldPresentation, var: Optional[str] = None,
                      budget: Budget | None = None) -> List[Tuple[MultiPoly, int]]:
    """Irreducible factors of f with multiplicities.

    ``f`` lives in F_p[base generators, var] (or is a string parsed there).
    The product of the factors with multiplicities equals f up to a unit of
    the base field.
    """
    budget = ensure(budget)
    if isinstance(f, str):
        if var is None:
            raise ValueError("var is required when f is given as text")
        ring = base.ring.extend([var])
        f = ring.parse(f)
    ring = f.ring
    if var is None:
        extra = [n for n in ring.names if n not in base.generators]
        if len(extra) != 1:
            raise ValueError("cannot determine the polynomial variable")
        var = extra[0]
    ring = PolyRing(base.p, list(base.generators) + [var])
    f = f.to_ring(ring)
    if f.is_zero():
        raise ValueError("cannot factor zero")
    if base.relations:
        f = _reduce_coeffs(f, base, var)
    n = f.degree(var)
    if n <= 0:
        return []
    if base.dimension(budget) == 0:
        return _factor_finite(f, base, var)
    if n == 1:
        return [(_monic_in(f, var, base), 1)]
    pattern = _pth_pattern(f, var, base.p)
    if pattern is not None:
        return _factor_pth_pattern(f, var, base, pattern, budget)
    if base.is_rational() and len(base.generators) == 1:
        return _factor_over_rational(f, var, base, budget)
    raise UnsupportedBase("factorization over this infinite base is limited to degree <= 1, "
                          "X^(p^m) - c, and separable polynomials over F_p(t)")


def _reduce_coeffs(f: MultiPoly, base: FieldPresentation, var: str) -> MultiPoly:
    out = f.ring.zero()
    v = f.ring.gen(var)
    for k, c in f.coeffs_in(var).items():
        small = _coeff_to_base(c, base, var)
        out = out + base.reduce(small).to_ring(f.ring) * v**k
    return out


def _coeff_to_base(c: MultiPoly, base: FieldPresentation, var: str) -> MultiPoly:
    i = c.ring.index(var)
    return MultiPoly(base.ring, {e[:i] + e[i + 1:]: v for e, v in c.terms.items()})


def _monic_in(f: MultiPoly, var: str, base: FieldPresentation) -> MultiPoly:
    lc = f.coeffs_in(var)[f.degree(var)]
    if lc.is_constant():
        p = base.p
        return f.scale(pow(lc.constant_coeff(), p - 2, p))
    return f


def _factor_finite(f: MultiPoly, base: FieldPresentation, var: str):
    F = base.finite_field()
    coeffs = f.coeffs_in(var)
    dense = [F.zero] * (f.degree(var) + 1)
    for k, c in coeffs.items():
        dense[k] = base.to_gf(base.element(_coeff_to_base(c, base, var)))
    dense = ff.trim(F, dense)
    out = []
    ring = f.ring
    x = ring.gen(var)
    for g, m in ff.factor(F, dense):
        poly = ring.zero()
        for k, a in enumerate(g):
            if F.is_zero(a):
                continue
            elem = base.from_gf(a)
            if not elem.den.is_constant():
                raise ArithmeticError("finite field element not reduced to a polynomial")
            coeff = elem.num.scale(pow(elem.den.constant_coeff(), base.p - 2, base.p)).to_ring(ring)
            poly = poly + coeff * x**k
        out.append((poly, m))
    return out


def _pth_pattern(f: MultiPoly, var: str, p: int) -> Optional[int]:
    coeffs = f.coeffs_in(var)
    n = f.degree(var)
    if set(coeffs) != {0, n}:
        return None
    m = 0
    q = n
    while q % p == 0:
        q //= p
        m += 1
    return m if q == 1 and m >= 1 else None


def _factor_pth_pattern(f: MultiPoly, var: str, base: FieldPresentation, m: int, budget: Budget):
    coeffs = f.coeffs_in(var)
    n = f.degree(var)
    lc = base.element(_coeff_to_base(coeffs[n], base, var))
    c = -base.element(_coeff_to_base(coeffs[0], base, var)) / lc
    p = base.p
    mult = 1
    while m > 0:
        r = is_pth_power(c, base, budget)
        if r is None:
            break
        c = r
        m -= 1
        mult *= p
    ring = f.ring
    x = ring.gen(var)
    # X^(p^m) - c with c = num/den, cleared to den*X^(p^m) - num
    factor = c.den.to_ring(ring) * x ** (p**m) - c.num.to_ring(ring)
    return [(_monic_in(factor, var, base), mult)]


def _factor_over_rational(f: MultiPoly, var: str, base: FieldPresentation, budget: Budget):
    """Hensel lifting at a good F_p point plus Zassenhaus recombination over F_p(t)."""
    p = base.p
    t = base.generators[0]
    F = ff.GF(p)
    n = f.degree(var)
    coeffs = {k: _dense_t(_coeff_to_base(c, base, var), t) for k, c in f.coeffs_in(var).items()}
    lc = coeffs[n]
    # monic transform: g(Y) = lc^(n-1) f(Y / lc)
    mon = {}
    for k, c in coeffs.items():
        mon[k] = ff.pmul(F, c, _tpow(F, lc, n - 1 - k)) if k < n else [1]
    D = max(len(c) - 1 for c in mon.values())
    point = None
    for a in range(p):
        spec = ff.trim(F, [ff.peval(F, mon.get(k, []), a) for k in range(n + 1)])
        if len(ff.pgcd(F, spec, ff.pderiv(F, spec))) == 1:
            point = a
            break
    if point is None:
        raise UnsupportedBase("no squarefree specialization over the prime field")
    shifted = {k: _shift(F, c, point) for k, c in mon.items()}
    prec = D + 1
    # bivariate as list over Y-degree of t-series (lists of length prec)
    big = [_pad(shifted.get(k, []), prec) for k in range(n + 1)]
    local = [g for g, _ in ff.factor(F, [big[k][0] for k in range(n + 1)])]
    lifted = _hensel_multi(F, big, local, prec, budget)
    found = []
    remaining = list(range(len(lifted)))
    current = big
    size = 1
    while 2 * size <= len(remaining):
        hit = None
        for subset in itertools.combinations(remaining, size):
            cand = [[1] + [0] * (prec - 1)]
            for i in subset:
                cand = _bimul(F, cand, lifted[i], prec)
            q = _bidiv_exact(F, current, cand, prec)
            if q is not None:
                hit = subset, cand, q
                break
            budget.spend(prec * len(cand))
        if hit is None:
            size += 1
            continue
        subset, cand, q = hit
        found.append(cand)
        current = q
        remaining = [i for i in remaining if i not in subset]
    found.append(current)
    ring = f.ring
    out = []
    for g in found:
        poly = _bivariate_to_poly(F, g, point, ring, var, t, lc)
        out.append((poly, 1))
    out.sort(key=lambda fm: (fm[0].degree(var), str(fm[0])))
    return out


def _dense_t(c: MultiPoly, t: str) -> list:
    out = [0] * (max((e[0] for e in c.terms), default=-1) + 1)
    for e, v in c.terms.items():
        out[e[0]] = v
    return ff.trim(ff.GF(c.ring.p), out)


def _tpow(F, c, k):
    out = [1]
    for _ in range(k):
        out = ff.pmul(F, out, c)
    return out


def _shift(F, c, a):
    """c(t + a) as a dense list."""
    out = []
    base = [a % F.p, 1]
    power = [1]
    for coef in c:
        out = ff.padd(F, out, ff.pscale(F, power, coef))
        power = ff.pmul(F, power, base)
    return out


def _pad(c, prec):
    c = list(c[:prec])
    return c + [0] * (prec - len(c))


def _bimul(F, a, b, prec):
    """Product of bivariate polys stored as [Y-degree][t-degree] truncated in t."""
    p = F.p
    out = [[0] * prec for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            row = out[i + j]
            for u, x in enumerate(ai):
                if x:
                    for v in range(prec - u):
                        y = bj[v]
                        if y:
                            row[u + v] = (row[u + v] + x * y) % p
    return out


def _bidiv_exact(F, f, g, prec):
    """Exact quotient f / g in F_p[t][Y] (g monic in Y), or None if g does not divide f."""
    f = [ff.trim(F, r) for r in f]
    g = [ff.trim(F, r) for r in g]
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    q = [[] for _ in range(len(f) - dg)]
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if not c:
            continue
        q[k - dg] = c
        for j in range(dg + 1):
            f[k - dg + j] = ff.psub(F, f[k - dg + j], ff.pmul(F, c, g[j]))
    if any(r for r in f[:dg]):
        return None
    if any(len(r) > prec for r in q):
        return None
    return [_pad(r, prec) for r in q]


def _tmul(p, a, b, prec):
    out = [0] * prec
    for u, x in enumerate(a):
        if x:
            for v in range(prec - u):
                if b[v]:
                    out[u + v] = (out[u + v] + x * b[v]) % p
    return out


def _hensel_multi(F, f, local, prec, budget):
    """Lift f = prod(local) mod t to a factorization mod t^prec (all factors monic in Y)."""
    if len(local) == 1:
        return [f]
    g0 = local[0]
    h0 = [1]
    for g in local[1:]:
        h0 = ff.pmul(F, h0, g)
    G, H = _hensel_pair(F, f, g0, h0, prec, budget)
    return [G] + _hensel_multi(F, H, local[1:], prec, budget)


def _hensel_pair(F, f, g0, h0, prec, budget):
    p = F.p
    # Bezout: s g0 + u h0 = 1
    s, u = _bezout(F, g0, h0)
    G = [[c] + [0] * (prec - 1) for c in g0]
    H = [[c] + [0] * (prec - 1) for c in h0]
    for j in range(1, prec):
        prod = _bimul(F, G, H, prec)
        c = [((f[k][j] if k < len(f) else 0) - (prod[k][j] if k < len(prod) else 0)) % p
             for k in range(max(len(f), len(prod)))]
        c = ff.trim(F, c)
        if not c:
            continue
        dg = ff.pmod(F, ff.pmul(F, u, c), g0)
        dh = ff.pmod(F, ff.pmul(F, s, c), h0)
        for k, x in enumerate(dg):
            G[k][j] = x
        for k, x in enumerate(dh):
            H[k][j] = x
        budget.spend(len(c) * prec)
    return G, H


def _bezout(F, a, b):
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = ff.pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, ff.psub(F, s0, ff.pmul(F, q, s1))
        t0, t1 = t1, ff.psub(F, t0, ff.pmul(F, q, t1))
    inv = F.inv(r0[-1])
    return ff.pscale(F, s0, inv), ff.pscale(F, t0, inv)


def _bivariate_to_poly(F, g, point, ring: PolyRing, var: str, t: str, lc) -> MultiPoly:
    """Undo the shift and the monic transform, returning a primitive factor."""
    p = F.p
    coeffs = [_shift(F, ff.trim(F, row), -point) for row in g]
    # substitute Y = lc * X
    out = []
    lc_power = [1]
    for k, c in enumerate(coeffs):
        out.append(ff.pmul(F, c, lc_power))
        lc_power = ff.pmul(F, lc_power, lc)
    content = []
    for c in out:
        if c:
            content = ff.pgcd(F, content, c) if content else ff.monic(F, c)
    if content:
        out = [ff.pdivmod(F, c, content)[0] if c else [] for c in out]
    poly = ring.zero()
    x = ring.gen(var)
    tt = ring.gen(t)
    for k, c in enumerate(out):
        for j, a in enumerate(c):
            if a:
                poly = poly + (tt**j * x**k).scale(a)
    lead = poly.coeffs_in(var)[poly.degree(var)]
    top = lead.sorted_terms()[0][1]
    return poly.scale(pow(top, p - 2, p))
