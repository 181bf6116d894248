"""Places of function fields presented as regular codimension-one localizations.

A place is given by an algebra A = F_p[X]/I (its fraction field is the
function field, possibly through a chart of coordinates) and a prime q of A
with dim A - dim A/q = 1 whose localization is regular.  Values are read
off from symbolic powers: g lies in m^k iff ((pi^k) + I) : g is not
contained in q.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .budget import Budget, ensure
from .errors import NotCodimOne, NotPrime, NotRegular, UnsupportedBase, ValueCapExceeded
from .exactfield import finite as ff
from .exactfield.groebner import (
    IdealHandle,
    _fresh,
    contraction,
    divide_exact,
    groebner_basis,
    ideal_membership,
    quotient,
    saturation,
)
from .exactfield.linalg import rank
from .exactfield.poly import MultiPoly, PolyRing
from .exactfield.presentation import FieldElement, FieldPresentation

VALUE_CAP = 64

Chart = Tuple[Tuple[str, MultiPoly, MultiPoly], ...]


class ZeroOutside:
    """Residue of an element outside the valuation ring, taken to be zero."""

    outside = True

    def __init__(self, field: FieldPresentation):
        self.field = field
        self.value = field.zero()

    def is_zero(self) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, ZeroOutside)

    __hash__ = None

    def __str__(self):
        return "0 (outside O)"

    def __repr__(self):
        return "ZeroOutside()"


@dataclass(frozen=True, eq=False)
class PlacePresentation:
    algebra: FieldPresentation
    prime: Tuple[MultiPoly, ...]
    residue_field: FieldPresentation
    uniformiser: MultiPoly
    regularity: int
    constants: Tuple[str, ...] = ()
    chart: Optional[Chart] = None
    global_field: Optional[FieldPresentation] = None
    label: str = ""
    e: Optional[int] = None
    flags: Tuple[str, ...] = ()

    @property
    def field(self) -> FieldPresentation:
        """The field whose elements the place evaluates."""
        return self.global_field if self.global_field is not None else self.algebra

    @property
    def p(self) -> int:
        return self.algebra.p

    @cached_property
    def residue_degree(self) -> Optional[int]:
        """[kappa : K] where K is the field of constants, when finite."""
        return _degree_over(self.residue_field, self.constants)

    def in_prime(self, g: MultiPoly) -> bool:
        return self.residue_field.reduce(g.to_ring(self.residue_field.ring)).is_zero()

    def with_meta(self, **kw) -> "PlacePresentation":
        return replace(self, **kw)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "prime": [str(g) for g in self.prime],
            "residue_degree": self.residue_degree,
            "e": self.e,
            "uniformiser": str(self.uniformiser),
            "flags": list(self.flags),
        }

    def __repr__(self):
        return f"PlacePresentation({self.label or list(map(str, self.prime))})"


def _degree_over(kappa: FieldPresentation, constants: Sequence[str]) -> Optional[int]:
    others = [n for n in kappa.generators if n not in set(constants)]
    consts = [n for n in kappa.generators if n in set(constants)]
    if not kappa.relations:
        return 1 if not others else None
    ring = PolyRing(kappa.p, others + consts)
    order = f"block:{len(others)},{len(consts)}" if consts and others else "grevlex"
    gb = groebner_basis(IdealHandle.of(ring, [r.to_ring(ring) for r in kappa.relations]), order)
    k = len(others)
    heads = [lm[:k] for lm in gb._lead]
    if any(not any(h) for h in heads):
        return None if k else 1
    bounds = []
    for i in range(k):
        pure = [h[i] for h in heads if h[i] and all(v == 0 for j, v in enumerate(h) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(a <= b for a, b in zip(h, e)) for h in heads):
            count += 1
    return count


# ---------------------------------------------------------------------------
# construction


def place_from_prime(A: FieldPresentation, prime_gens, *, constants: Sequence[str] = (),
                     chart: Optional[Dict[str, Tuple]] = None, global_field: Optional[FieldPresentation] = None,
                     label: Optional[str] = None, budget: Budget | None = None) -> PlacePresentation:
    """Certify that A localized at (prime_gens) is a DVR and build the place."""
    budget = ensure(budget)
    ring = A.ring
    prime = tuple(g if isinstance(g, MultiPoly) else ring.parse(g) for g in prime_gens)
    prime = tuple(g.to_ring(ring) for g in prime if not g.is_zero())
    gb = groebner_basis(IdealHandle.of(ring, list(A.relations) + list(prime)), budget=budget)
    if any(g.is_constant() for g in gb.basis):
        raise NotPrime("the prime generators give the unit ideal")
    tower = [list(constants)] if constants else None
    kappa = FieldPresentation(A.p, A.generators, gb.basis, tower)
    kappa.certify(budget)
    codim = A.dimension(budget) - kappa.dimension(budget)
    if codim != 1:
        raise NotCodimOne(f"the prime has codimension {codim}, not 1")
    ideal = kappa.gb
    jac_i = [r.jacobian_row() for r in A.relations]
    r0 = rank(jac_i, ideal, budget) if jac_i else 0
    r1 = rank(jac_i + [g.jacobian_row() for g in prime], ideal, budget)
    reg = r1 - r0
    if reg != 1:
        raise NotRegular(f"dim m/m^2 = {reg}; the localization is not a DVR")
    pi = None
    for g in sorted(prime, key=lambda g: (g.total_degree(), len(g))):
        if rank(jac_i + [g.jacobian_row()], ideal, budget) > r0:
            pi = g
            break
    if pi is None:
        raise NotRegular("no prime generator is a uniformiser")
    if chart is not None:
        chart = _normalise_chart(chart, ring)
    if label is None:
        label = "(" + ", ".join(str(g) for g in prime) + ")"
    return PlacePresentation(A, prime, kappa, pi, reg, tuple(constants), chart, global_field, label)


def _normalise_chart(chart, ring: PolyRing) -> Chart:
    out = []
    for name, image in sorted(chart.items()) if isinstance(chart, dict) else chart:
        if isinstance(image, tuple):
            num, den = image
        else:
            num, den = image, 1
        num = ring.const(num) if isinstance(num, int) else (ring.parse(num) if isinstance(num, str) else num)
        den = ring.const(den) if isinstance(den, int) else (ring.parse(den) if isinstance(den, str) else den)
        out.append((name, num.to_ring(ring), den.to_ring(ring)))
    return tuple(out)


def is_trivially_valued(place: PlacePresentation, names: Sequence[str], budget: Budget | None = None) -> bool:
    """Every nonzero element of F_p(names) is a unit at the place."""
    names = list(names)
    if not names:
        return True
    budget = ensure(budget)
    below = contraction(place.residue_field.ideal, names, budget)
    base = contraction(place.algebra.ideal, names, budget)
    return all(ideal_membership(g, base, budget) for g in below.generators)


# ---------------------------------------------------------------------------
# elements


def to_local(place: PlacePresentation, f) -> FieldElement:
    """Interpret f (in the place's field) as an element of Frac(A)."""
    A = place.algebra
    if isinstance(f, FieldElement):
        if f.field is A or (place.global_field is None and f.field == A):
            return f
        if place.global_field is not None and (f.field is place.global_field or f.field == place.global_field):
            return _through_chart(place, f)
        if f.field == A:
            return f
        raise ValueError("element does not belong to the place's field")
    if place.global_field is not None:
        return _through_chart(place, place.global_field.element(f))
    return A.element(f)


def _through_chart(place: PlacePresentation, x: FieldElement) -> FieldElement:
    A = place.algebra
    if place.chart is None:
        return A.element(x.num.to_ring(A.ring), x.den.to_ring(A.ring))
    images = {n: A.element(num, den) for n, num, den in place.chart}
    return _eval_in(x.num, images, A) / _eval_in(x.den, images, A)


def _eval_in(g: MultiPoly, images: Dict[str, FieldElement], A: FieldPresentation) -> FieldElement:
    powers: Dict[Tuple[str, int], FieldElement] = {}
    acc = A.zero()
    for e, c in g.terms.items():
        term = A.element(c)
        for n, k in zip(g.ring.names, e):
            if k:
                if (n, k) not in powers:
                    powers[(n, k)] = images[n] ** k
                term = term * powers[(n, k)]
        acc = acc + term
    return acc


def _poly_value(place: PlacePresentation, g: MultiPoly, cap: int, budget: Budget) -> int:
    A = place.algebra
    g = g.to_ring(A.ring)
    if A.reduce(g).is_zero():
        raise ValueError("valuation of zero")
    if not place.in_prime(g):
        return 0
    if not A.relations and len(place.prime) == 1:
        pi = place.prime[0]
        k = 0
        h = g
        while True:
            q, r = divide_exact(h, pi)
            if not r.is_zero():
                return k
            k += 1
            if k > cap:
                raise ValueCapExceeded(f"value exceeds the cap {cap}")
            h = q
    pi = place.uniformiser
    k = 1
    while True:
        if k >= cap:
            raise ValueCapExceeded(f"value exceeds the cap {cap}")
        J = quotient(A.ideal.with_generators([pi ** (k + 1)]), g, budget)
        if all(place.in_prime(j) for j in J.generators):
            return k
        k += 1


def valuation_of(place: PlacePresentation, f, cap: int = VALUE_CAP, budget: Budget | None = None) -> int:
    budget = ensure(budget)
    x = to_local(place, f)
    if x.is_zero():
        raise ValueError("valuation of zero")
    return _poly_value(place, x.num, cap, budget) - _poly_value(place, x.den, cap, budget)


def local_representative(place: PlacePresentation, f, budget: Budget | None = None):
    """(a, b) with f = a/b and b outside the prime, or None when v(f) < 0."""
    budget = ensure(budget)
    x = to_local(place, f)
    a, b = x.num, x.den
    if not place.in_prime(b):
        return a, b
    if valuation_of(place, x, budget=budget) < 0:
        return None
    A = place.algebra
    z = _fresh(A.ring, "_z")
    big = A.ring.extend([z], front=True)
    Z = big.gen(z)
    gens = [r.to_ring(big) for r in A.relations] + [b.to_ring(big) * Z - a.to_ring(big)]
    kernel = saturation(IdealHandle.of(big, gens), b.to_ring(big), budget)
    gb = groebner_basis(kernel, f"block:1,{A.ring.nvars}", budget)
    for h in gb.basis:
        if h.degree(z) != 1:
            continue
        parts = h.coeffs_in(z)
        c = _drop_front(parts[1], A.ring)
        if place.in_prime(c):
            continue
        d0 = _drop_front(parts.get(0, big.zero()), A.ring)
        return -d0, c
    raise ArithmeticError("no representative with a unit denominator was found")


def _drop_front(f: MultiPoly, ring: PolyRing) -> MultiPoly:
    return MultiPoly(ring, {e[1:]: c for e, c in f.terms.items()})


def residue_of(place: PlacePresentation, f, budget: Budget | None = None):
    """The residue of f in kappa, or ZeroOutside when v(f) < 0."""
    rep = local_representative(place, f, budget)
    kappa = place.residue_field
    if rep is None:
        return ZeroOutside(kappa)
    a, b = rep
    return kappa.element(a.to_ring(kappa.ring), b.to_ring(kappa.ring))


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class PlaceSet:
    function_field: FieldPresentation
    degree_bound: int
    places: Tuple[PlacePresentation, ...]
    unresolved: Tuple[str, ...] = field(default=())

    def __iter__(self):
        return iter(self.places)

    def __len__(self):
        return len(self.places)

    def to_json(self) -> List[dict]:
        return [P.to_json() for P in self.places]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "prime", "residue_degree", "e", "uniformiser", "flags"])
        for P in self.places:
            rec = P.to_json()
            w.writerow([rec["label"], ";".join(rec["prime"]), rec["residue_degree"], rec["e"],
                        rec["uniformiser"], ";".join(rec["flags"])])
        return buf.getvalue()


def enumerate_places(F: FieldPresentation, degree: int, budget: Budget | None = None) -> PlaceSet:
    """All places of F over F_p lying over base places of degree <= ``degree``, plus infinity."""
    budget = ensure(budget)
    places: List[PlacePresentation] = []
    unresolved: List[str] = []
    for item in iter_places(F, degree, budget):
        if isinstance(item, str):
            unresolved.append(item)
        else:
            places.append(item)
    return PlaceSet(F, degree, tuple(places), tuple(unresolved))


def iter_places(F: FieldPresentation, degree: int, budget: Budget | None = None) -> Iterator:
    """Yields places, and labels (strings) for fibres left unresolved."""
    budget = ensure(budget)
    if degree < 1:
        raise ValueError("degree bound must be positive")
    if len(F.generators) == 1 and not F.relations:
        yield from _rational_places(F, degree, budget)
        return
    x, y, g = _plane_shape(F)
    for d in range(1, degree + 1):
        for f in ff.monic_irreducibles(ff.GF(F.p), d):
            fpoly = _dense_to_poly(f, F.ring, x)
            yield from _places_over(F, x, y, g, fpoly, None, None, budget)
    yield from _infinite_places(F, x, y, g, budget)


def _dense_to_poly(f: Sequence[int], ring: PolyRing, var: str) -> MultiPoly:
    v = ring.gen(var)
    out = ring.zero()
    for i, c in enumerate(f):
        if c:
            out = out + (v ** i).scale(c)
    return out


def _rational_places(F: FieldPresentation, degree: int, budget: Budget):
    x = F.generators[0]
    for d in range(1, degree + 1):
        for f in ff.monic_irreducibles(ff.GF(F.p), d):
            fpoly = _dense_to_poly(f, F.ring, x)
            P = place_from_prime(F, [fpoly], budget=budget)
            yield P.with_meta(e=1)
    w = _fresh(F.ring, "w")
    A = FieldPresentation(F.p, [w])
    P = place_from_prime(A, [A.ring.gen(w)], chart={x: (1, A.ring.gen(w))}, global_field=F,
                         label="inf", budget=budget)
    yield P.with_meta(e=1)


def _plane_shape(F: FieldPresentation):
    if len(F.generators) != 2 or len(F.relations) != 1 or F.tower[:-1]:
        raise UnsupportedBase("places are enumerated for F_p(x) and F_p(x)[y]/(g) only")
    g = F.relations[0]
    for y in reversed(F.generators):
        x = next(n for n in F.generators if n != y)
        coeffs = g.coeffs_in(y)
        n = max(coeffs)
        lead = coeffs[n]
        if n >= 1 and lead.is_constant():
            g = g.scale(pow(lead.constant_coeff(), F.p - 2, F.p))
            return x, y, g
    raise UnsupportedBase("the defining polynomial must be monic in one of the generators")


def _residue_base(p: int, fpoly: MultiPoly, x: str):
    coeffs = fpoly.coeffs_in(x)
    d = max(coeffs)
    dense = [coeffs[i].constant_coeff() if i in coeffs else 0 for i in range(d + 1)]
    if d == 1:
        return ff.GF(p), (-dense[0]) % p, d
    F = ff.GF(p, dense)
    return F, F.generator_element(), d


def _eval_coeff(F: ff.GF, c: MultiPoly, x: str, xbar):
    acc = F.zero
    for k, part in c.coeffs_in(x).items():
        if not part.is_constant():
            raise UnsupportedBase("coefficients must be polynomials in the base variable")
        acc = F.add(acc, F.mul(F.from_int(part.constant_coeff()), F.pow(xbar, k)))
    return acc


def _lift_coeff(F: ff.GF, c, ring: PolyRing, x: str) -> MultiPoly:
    if F.degree == 1:
        return ring.const(c)
    return _dense_to_poly(list(c), ring, x)


def _places_over(A: FieldPresentation, x: str, y: str, g: MultiPoly, fpoly: MultiPoly,
                 chart: Optional[Dict[str, Tuple]], global_field: Optional[FieldPresentation], budget: Budget):
    F, xbar, d = _residue_base(A.p, fpoly, x)
    coeffs = g.coeffs_in(y)
    n = max(coeffs)
    gbar = ff.trim(F, [_eval_coeff(F, coeffs.get(i, A.ring.zero()), x, xbar) for i in range(n + 1)])
    total = 0
    found: List = []
    for h, m in ff.factor(F, gbar):
        H = A.ring.zero()
        for i, c in enumerate(h):
            if not F.is_zero(c):
                H = H + _lift_coeff(F, c, A.ring, x) * A.ring.gen(y) ** i
        label = f"({fpoly}, {H})"
        try:
            P = place_from_prime(A, [fpoly, H], chart=chart, global_field=global_field, label=label, budget=budget)
        except NotRegular:
            if d == 1 and len(h) == 2:
                b = F.neg(h[0])
                for item in _blow_up(A, x, y, g, xbar, b, chart, global_field, budget):
                    if not isinstance(item, str):
                        total += item.e * item.residue_degree
                    found.append(item)
            else:
                found.append(label)
            continue
        e = _poly_value(P, fpoly, VALUE_CAP, budget)
        P = P.with_meta(e=e)
        total += e * P.residue_degree
        found.append(P)
    if total < n * d and not any(isinstance(item, str) for item in found):
        found.append(f"({fpoly}): residue degrees sum to {total} < {n * d}")
    yield from found


def _compose_chart(chart, global_names, subs: Dict[str, MultiPoly], target: PolyRing):
    if chart is None:
        return {n: (subs[n], target.one()) for n in global_names}
    out = {}
    for name, (num, den) in chart.items():
        out[name] = (num.subs(subs, target), den.subs(subs, target))
    return out


def _blow_up(A, x, y, g, a: int, b: int, chart, global_field, budget):
    """One blow-up of the plane at (a, b), keeping the strict transform."""
    p = A.p
    u = _fresh(A.ring, "u")
    y1 = _fresh(A.ring.extend([u]), f"{y}1")
    B = PolyRing(p, [u, y1])
    U, Y1 = B.gen(u), B.gen(y1)
    subs = {x: U + a, y: Y1 * U + b}
    G = g.subs(subs, B)
    k = min(e[0] for e in G.terms)
    g1 = MultiPoly(B, {(e[0] - k, e[1]): c for e, c in G.terms.items()})
    Balg = FieldPresentation(p, [u, y1], [g1])
    if chart is None:
        new_chart = {n: (s, B.one()) for n, s in subs.items()}
        glob = A
    else:
        new_chart = _compose_chart(dict(chart), None, subs, B)
        glob = global_field
    fibre = ff.trim(ff.GF(p), _fibre_coeffs(g1, y1, p))
    if len(fibre) < 2:
        yield f"({A.ring.gen(x) - a}, {A.ring.gen(y) - b}): tangent direction outside the chart"
        return
    for h, _ in ff.factor(ff.GF(p), fibre):
        H = _dense_to_poly(h, B, y1)
        label = f"({A.ring.gen(x) - a}, {A.ring.gen(y) - b}) / ({u}, {H})"
        try:
            P = place_from_prime(Balg, [U, H], chart=new_chart, global_field=glob, label=label, budget=budget)
        except NotRegular:
            yield label + ": unresolved"
            continue
        e = _poly_value(P, U, VALUE_CAP, budget)
        yield P.with_meta(e=e, flags=("blown_up",))


def _fibre_coeffs(g1: MultiPoly, y1: str, p: int) -> List[int]:
    out: Dict[int, int] = {}
    for e, c in g1.terms.items():
        if e[0] == 0:
            out[e[1]] = (out.get(e[1], 0) + c) % p
    top = max(out) if out else -1
    return [out.get(i, 0) for i in range(top + 1)]


def _infinite_places(F: FieldPresentation, x: str, y: str, g: MultiPoly, budget: Budget):
    coeffs = g.coeffs_in(y)
    n = max(coeffs)
    degs = {i: c.degree(x) for i, c in coeffs.items() if i < n}
    m = max([-(-dg // (n - i)) for i, dg in degs.items() if dg > 0] + [0])
    w = _fresh(F.ring, "w")
    z = _fresh(F.ring.extend([w]), "z")
    R = PolyRing(F.p, [w, z])
    W, Zv = R.gen(w), R.gen(z)
    ginf = R.zero()
    for i, c in coeffs.items():
        # w^(m(n-i)) * c(1/w) as a polynomial in w
        top = m * (n - i)
        part = R.zero()
        for k, cc in c.coeffs_in(x).items():
            part = part + W ** (top - k) * cc.constant_coeff()
        ginf = ginf + part * Zv ** i
    A = FieldPresentation(F.p, [w, z], [ginf])
    chart = {x: (R.one(), W), y: (Zv, W ** m)}
    for item in _places_over(A, w, z, ginf, W, chart, F, budget):
        if isinstance(item, str):
            yield "inf " + item
        else:
            yield item.with_meta(label="inf " + item.label)


def enumerate_places_xa(F: FieldPresentation, height: int, budget: Budget | None = None) -> PlaceSet:
    """Places (x - a(s)) of K(x), K = F_p(s), for deg a <= height."""
    budget = ensure(budget)
    s, x = _xa_shape(F)
    ring = F.ring
    S, X = ring.gen(s), ring.gen(x)
    places = []
    for coeffs in itertools.product(range(F.p), repeat=height + 1):
        a = ring.zero()
        for i, c in enumerate(coeffs):
            if c:
                a = a + (S ** i).scale(c)
        P = place_from_prime(F, [X - a], constants=(s,), label=f"({x} - ({a}))", budget=budget)
        places.append(P.with_meta(e=1))
    return PlaceSet(F, height, tuple(places))


def _xa_shape(F: FieldPresentation):
    if F.relations or len(F.generators) != 2:
        raise UnsupportedBase("the x - a family needs F = F_p(s)(x)")
    base = F.tower[0] if len(F.tower) > 1 else F.generators[:1]
    if len(base) != 1:
        raise UnsupportedBase("the base must be F_p(s) with one generator")
    s = base[0]
    x = next(n for n in F.generators if n != s)
    return s, x


# ---------------------------------------------------------------------------
# ramification


def minimal_polynomial_below(place: PlacePresentation, t, budget: Budget | None = None) -> MultiPoly:
    """The prime of K[T] below the place for K(t), as a polynomial in constants and T."""
    budget = ensure(budget)
    rep = local_representative(place, t, budget)
    if rep is None:
        raise ValueError("t has a pole at the place")
    a, b = rep
    ring = place.algebra.ring
    T = _fresh(ring, "T")
    big = ring.extend([T])
    gens = [r.to_ring(big) for r in place.residue_field.relations]
    gens.append(b.to_ring(big) * big.gen(T) - a.to_ring(big))
    kernel = saturation(IdealHandle.of(big, gens), b.to_ring(big), budget)
    keep = list(place.constants) + [T]
    below = groebner_basis(contraction(kernel, keep, budget), budget=budget)
    polys = [h for h in below.basis if not h.is_zero()]
    if len(polys) != 1:
        raise UnsupportedBase("the prime below is not principal in the presented coordinates")
    return polys[0]


def ramification_data(place: PlacePresentation, t, budget: Budget | None = None) -> Tuple[int, bool]:
    """(e, residue separable) of the place in F/K(t)."""
    budget = ensure(budget)
    x = to_local(place, t)
    v = valuation_of(place, x, budget=budget)
    if v < 0:
        return ramification_data(place, x.inverse(), budget)
    mu = minimal_polynomial_below(place, x, budget)
    A = place.algebra
    images = {n: A.gen(n) for n in place.constants}
    images[mu.ring.names[-1]] = x
    e = valuation_of(place, _eval_in(mu, images, A), budget=budget)
    return e, _residue_separable(place, x, budget)


def _residue_separable(place: PlacePresentation, x: FieldElement, budget: Budget) -> bool:
    kappa = place.residue_field
    if kappa.dimension(budget) == 0:
        return True
    from .differential import is_separable_ext

    a, b = local_representative(place, x, budget)
    tau = _fresh(kappa.ring, "tau")
    ring = kappa.ring.extend([tau])
    rels = [r.to_ring(ring) for r in kappa.relations]
    rels.append(b.to_ring(ring) * ring.gen(tau) - a.to_ring(ring))
    layer = list(place.constants) + [tau]
    ext = FieldPresentation(kappa.p, ring.names, rels, [layer])
    return is_separable_ext(ext, layer, budget)


def exceptional_places(places: Sequence[PlacePresentation], t, budget: Budget | None = None) -> List[Tuple[PlacePresentation, List[str]]]:
    """Places where t has a pole, or which ramify in F/K(t), or have inseparable residue steps."""
    budget = ensure(budget)
    out = []
    for P in places:
        reasons = []
        if valuation_of(P, t, budget=budget) < 0:
            reasons.append("pole")
        e, sep = ramification_data(P, t, budget)
        if e > 1:
            reasons.append(f"ramified e={e}")
        if not sep:
            reasons.append("inseparable residue")
        if reasons:
            out.append((P, reasons))
    return out
