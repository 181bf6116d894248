"""Formal smoothness of discrete valuation rings over a trivially valued subfield.

The verdict is the differential criterion: O is formally smooth over C iff
the elements dt (x) 1, t in a p-basis T of C, stay independent in the
cotangent fibre Omega_O (x) kappa.  Two independent checks sit beside it:
adjoining p-th roots of T must give a DVR again, and ad-hoc refutation
search in a truncated completion (see :mod:`charp.series`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .budget import Budget, ensure
from .differential import absolute_module, cotangent_fibre, p_basis, p_independent
from .errors import NotPrime, NotPrimeUpstairs, NotTriviallyValued
from .exactfield.factor import is_pth_power
from .exactfield.groebner import IdealHandle, _fresh, groebner_basis, saturation
from .exactfield.linalg import echelon, rank
from .exactfield.poly import MultiPoly
from .exactfield.presentation import FieldPresentation
from .logic.ast import (And, Const, Forall, Formula, InO, Mul, Not, Or, Pow, Sub, Var, conj, disj,
                        product, total)
from .valuation import PlacePresentation, is_trivially_valued, local_representative, to_local


@dataclass(frozen=True, eq=False)
class SmoothnessVerdict:
    place: PlacePresentation
    subfield: Tuple[str, ...]
    basis: Tuple[str, ...]
    verdict: bool
    witness: Tuple
    rows: Tuple[Tuple[MultiPoly, ...], ...]

    @property
    def witness_kind(self) -> str:
        return "independent" if self.verdict else "dependence"

    def recheck(self, budget: Budget | None = None) -> bool:
        """Re-verify the witness by matrix arithmetic over the residue field."""
        fibre = cotangent_fibre(self.place)
        J = [list(r) for r in fibre.jacobian]
        ideal = fibre.ideal
        k = len(self.rows)
        if self.verdict:
            return fibre.span_rank(self.rows, budget) == k
        lam = list(self.witness)
        if all(_is_zero(c, ideal) for c in lam):
            return False
        combo = [sum((c * r[j] for c, r in zip(lam, self.rows)), fibre.residue_field.ring.zero())
                 for j in range(len(fibre.residue_field.generators))]
        if all(_is_zero(x, ideal) for x in combo):
            return True
        return rank(J + [combo], ideal, budget) == (rank(J, ideal, budget) if J else 0)

    def to_json(self) -> dict:
        doc = {
            "place": self.place.label,
            "subfield": list(self.subfield),
            "basis": list(self.basis),
            "verdict": self.verdict,
            "witness_kind": self.witness_kind,
        }
        if self.verdict:
            doc["pivots"] = list(self.witness)
        else:
            doc["dependence"] = {t: str(c) for t, c in zip(self.basis, self.witness)}
        doc["differentials"] = {t: [str(x) for x in row] for t, row in zip(self.basis, self.rows)}
        return doc


def _is_zero(f: MultiPoly, ideal) -> bool:
    from .exactfield.linalg import is_zero_mod

    return is_zero_mod(f, ideal)


def _subfield_names(place: PlacePresentation, C) -> Tuple[str, ...]:
    if C is None:
        return tuple(place.constants)
    if isinstance(C, str):
        C = [] if C in ("", "Fp", "prime") else [C]
    names = tuple(n for n in place.field.generators if n in set(C))
    if len(names) != len(set(C)):
        raise ValueError(f"subfield {list(C)} mentions unknown generators")
    return names


def _default_basis(place: PlacePresentation, C: Tuple[str, ...], budget: Budget) -> List[str]:
    if not C:
        return []
    sub = place.field.subfield(list(C), budget)
    return [str(x) for x in p_basis(sub, budget)]


def dt_rows(place: PlacePresentation, T: Sequence, budget: Budget | None = None) -> List[List[MultiPoly]]:
    fibre = cotangent_fibre(place)
    out = []
    for t in T:
        out.append(fibre.class_of(t, budget))
    return out


def formally_smooth_over(place: PlacePresentation, C=None, T: Optional[Sequence] = None,
                         budget: Budget | None = None) -> SmoothnessVerdict:
    """Differential criterion relative to the finite family T in C.

    C defaults to the place's field of constants and T to a p-basis of C.
    """
    budget = ensure(budget)
    C = _subfield_names(place, C)
    if not is_trivially_valued(place, C, budget):
        raise NotTriviallyValued(f"{list(C)} is not trivially valued at {place.label}")
    if T is None:
        T = _default_basis(place, C, budget)
    T = [str(t) for t in T]
    fibre = cotangent_fibre(place)
    rows = dt_rows(place, T, budget)
    J = [list(r) for r in fibre.jacobian]
    ideal = fibre.ideal
    if not rows:
        return SmoothnessVerdict(place, C, (), True, (), ())
    ring = fibre.residue_field.ring
    ech = echelon(rows + J, ideal, budget, track=True, ring=ring)
    r0 = rank(J, ideal, budget) if J else 0
    independent = ech.rank - r0 == len(rows)
    if independent:
        pivots = tuple(ech.pivots)
        return SmoothnessVerdict(place, C, tuple(T), True, pivots, tuple(tuple(r) for r in rows))
    for vec in ech.kernel_rows():
        lam = [fibre.residue_field.reduce(c) for c in vec[:len(rows)]]
        if any(not c.is_zero() for c in lam):
            return SmoothnessVerdict(place, C, tuple(T), False, tuple(lam), tuple(tuple(r) for r in rows))
    raise ArithmeticError("rank drop without a dependence among the dt rows")


def ur_t_holds(place: PlacePresentation, t, budget: Budget | None = None) -> bool:
    """dt (x) 1 is nonzero in the cotangent fibre."""
    budget = ensure(budget)
    x = to_local(place, t)
    if local_representative(place, x, budget) is None or local_representative(place, 1 / x, budget) is None:
        raise NotTriviallyValued(f"{t} is not a unit at {place.label}")
    fibre = cotangent_fibre(place)
    return fibre.span_rank([fibre.class_of(x, budget)], budget) == 1


def conormal_check(place: PlacePresentation, budget: Budget | None = None) -> bool:
    """dim Omega_O (x) kappa = dim Omega_kappa + 1."""
    budget = ensure(budget)
    fibre = cotangent_fibre(place)
    kappa = place.residue_field
    return fibre.dimension(budget) == absolute_module(kappa).dimension(budget) + 1


def conormal_dimensions(place: PlacePresentation, budget: Budget | None = None) -> Tuple[int, int]:
    fibre = cotangent_fibre(place)
    return fibre.dimension(budget), absolute_module(place.residue_field).dimension(budget)


def proot_adjunction_is_dvr(place: PlacePresentation, elements: Sequence, budget: Budget | None = None) -> bool:
    """Adjoin p-th roots Y_i of the t_i and test whether the lifted prime is regular.

    The prime above q is lifted one root at a time: when the residue of t_i is
    already a p-th power h0/h1 over the previous residue field, Y_i - h0/h1
    joins the prime, otherwise the residue field grows by the root itself.
    """
    budget = ensure(budget)
    A = place.algebra
    p = A.p
    elems = [to_local(place, t) for t in elements]
    if not elems:
        return True
    reps = []
    for x in elems:
        rep = local_representative(place, x, budget)
        if rep is None or local_representative(place, 1 / x, budget) is None:
            raise NotTriviallyValued(f"{x} is not a unit at {place.label}")
        reps.append(rep)
    if not p_independent(elems, A, budget=budget):
        # a p-dependent family generates an inseparable relation upstairs,
        # so the extension is not reduced
        return False
    ring = A.ring
    names = []
    for i in range(len(elems)):
        name = _fresh(ring, f"Y{i}")
        names.append(name)
        ring = ring.extend([name])
    rel_B = [r.to_ring(ring) for r in A.relations]
    prime = [g.to_ring(ring) for g in place.prime]
    for (a, b), Y in zip(reps, names):
        a, b = a.to_ring(ring), b.to_ring(ring)
        rel_B.append(b * ring.gen(Y) ** p - a)
    lifted = list(prime)
    dens = []
    below = [r.to_ring(ring) for r in A.relations]
    for (a, b), Y, rel in zip(reps, names, rel_B[len(A.relations):]):
        basis = groebner_basis(IdealHandle.of(ring, below + lifted), budget=budget).basis
        kappa = FieldPresentation(p, ring.names, basis)
        t_bar = kappa.element(a.to_ring(ring), b.to_ring(ring))
        root = is_pth_power(t_bar, kappa, budget)
        if root is None:
            below.append(rel)
        else:
            lifted.append(root.den * ring.gen(Y) - root.num)
            if not root.den.is_constant():
                dens.append(root.den)
    ideal = IdealHandle.of(ring, below + lifted)
    for g in dens:
        ideal = saturation(ideal, g, budget)
    basis = groebner_basis(ideal, budget=budget).basis
    kappa = FieldPresentation(p, ring.names, basis)
    try:
        kappa.certify(budget)
    except NotPrime as exc:
        raise NotPrimeUpstairs(f"the lifted prime could not be certified: {exc}") from None
    ideal = kappa.gb
    if ideal.is_unit(budget):
        raise NotPrimeUpstairs("the lifted prime is the unit ideal")
    jac_B = [r.jacobian_row() for r in rel_B]
    jac_q = jac_B + [g.jacobian_row() for g in lifted]
    return rank(jac_q, ideal, budget) - rank(jac_B, ideal, budget) == 1


# ---------------------------------------------------------------------------
# axioms


def _unit(z, r: str) -> Formula:
    return Forall((r,), Or(InO(Var(r)), Not(InO(Mul(z, Var(r))))))


def _value_at_most_one(z, r: str) -> Formula:
    return Forall((r,), Or(InO(Var(r)), Not(InO(Mul(z, Pow(Var(r), 2))))))


def _monomial(ts: Sequence[str], alpha: Sequence[int]):
    factors = []
    for t, a in zip(ts, alpha):
        if a == 1:
            factors.append(Const(t))
        elif a > 1:
            factors.append(Pow(Const(t), a))
    return factors


def _p_combination(gamma, coeffs: Sequence[str], ts: Sequence[str], p: int):
    """gamma - sum_alpha c_alpha^p t^alpha over alpha in {0..p-1}^len(ts)."""
    terms = []
    for c, alpha in zip(coeffs, itertools.product(range(p), repeat=len(ts))):
        terms.append(product(Pow(Var(c), p), *_monomial(ts, alpha)))
    return Sub(gamma, total(*terms))


def ur_sentence(t: str, p: int) -> Formula:
    return Forall(("s", "r"), Or(InO(Var("r")),
                                 Not(InO(Mul(Sub(Const(t), Pow(Var("s"), p)), Pow(Var("r"), 2))))))


def emit_fs_axioms(T: Sequence[str], n: int, p: int = 5) -> List[Formula]:
    """Sentences saying that the dt (x) 1, t in T, are independent.

    One sentence per ordered choice (gamma; t_1..t_k) of distinct elements
    with k + 1 <= n.  With k = 0 the sentence is UR(gamma).
    """
    if n < 1:
        raise ValueError("tuple size must be at least 1")
    T = [str(t) for t in T]
    out: List[Formula] = []
    for k in range(0, n):
        for choice in itertools.permutations(T, k + 1):
            gamma, ts = choice[0], list(choice[1:])
            if k == 0:
                out.append(ur_sentence(gamma, p))
                continue
            out.append(_tuple_axiom(gamma, ts, p))
    return out


def _tuple_axiom(gamma: str, ts: List[str], p: int) -> Formula:
    k = len(ts)
    xs = [f"x{i}" for i in range(p ** k)]
    xhat = _p_combination(Const(gamma), xs, ts, p)
    indep = []
    for j, tj in enumerate(ts):
        others = ts[:j] + ts[j + 1:]
        ys = [f"y{i}" for i in range(p ** len(others))]
        combo = _p_combination(Const(tj), ys, others, p)
        guard = disj(*[Not(InO(Var(y))) for y in ys])
        indep.append(Forall(tuple(ys), Or(guard, _unit(combo, "r"))))
    outside = disj(*[Not(InO(Var(x))) for x in xs])
    body = disj(outside, _unit(xhat, "r"), And(_value_at_most_one(xhat, "r"), conj(*indep)))
    return Forall(tuple(xs), body)


# ---------------------------------------------------------------------------
# scans


@dataclass(frozen=True)
class ScanRecord:
    place: PlacePresentation
    status: str

    def to_json(self) -> dict:
        return {"place": self.place.label, "degree": self.place.residue_degree, "status": self.status}


def differential_status(place: PlacePresentation, h, budget: Budget | None = None) -> str:
    """"vanishes" or "nonzero" for dh (x) 1, or "pole" when h is not in O."""
    fibre = cotangent_fibre(place)
    rep = local_representative(place, h, budget)
    if rep is None:
        return "pole"
    vec = fibre.class_of(h, budget)
    return "nonzero" if fibre.span_rank([vec], budget) else "vanishes"


def scan_smooth(places, h, budget: Budget | None = None) -> List[ScanRecord]:
    """Classify dh (x) 1 at every place of a place set."""
    budget = ensure(budget)
    return [ScanRecord(P, differential_status(P, h, budget)) for P in places]
