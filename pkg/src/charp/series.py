"""Truncated completions kappa((pi)) of places, refutation search, embeddings.

A place is completed by choosing which generators of the algebra are sent
to constant series (their residues) and solving for the others by a chord
Newton iteration, so that the relations hold and the uniformiser goes to
pi.  The resulting map A -> kappa[[pi]] is exact modulo pi^N.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .budget import Budget, ensure
from .differential import p_independent
from .errors import (NotFormallySmooth, PrecisionTooLow, ResidueEmbeddingInvalid, UnknownConstant,
                     UnsupportedPresentation, ValueCapExceeded)
from .exactfield.factor import is_pth_power
from .exactfield.linalg import rank
from .exactfield.poly import MultiPoly
from .exactfield.presentation import FieldElement, FieldPresentation
from .valuation import PlacePresentation, to_local

CAP_NEG = 8


# ---------------------------------------------------------------------------
# coefficient arithmetic


class PresentationOps:
    """Coefficients as elements of a presented residue field."""

    def __init__(self, kappa: FieldPresentation):
        self.kappa = kappa
        self.zero = kappa.zero()
        self.one = kappa.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def from_int(self, n: int):
        return self.kappa.element(n % self.kappa.p)

    def lift(self, x: FieldElement):
        return x

    def to_element(self, a) -> FieldElement:
        return a

    def show(self, a) -> str:
        return str(a)


class FiniteOps(PresentationOps):
    """Coefficients in a finite residue field, as GF elements."""

    def __init__(self, kappa: FieldPresentation):
        self.kappa = kappa
        self.F = kappa.finite_field()
        self.zero = self.F.zero
        self.one = self.F.one

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def inv(self, a):
        return self.F.inv(a)

    def is_zero(self, a) -> bool:
        return self.F.is_zero(a)

    def from_int(self, n: int):
        return self.F.from_int(n)

    def lift(self, x: FieldElement):
        return self.kappa.to_gf(x)

    def to_element(self, a) -> FieldElement:
        return self.kappa.from_gf(a)

    def show(self, a) -> str:
        return str(self.kappa.from_gf(a))


def coefficient_ops(kappa: FieldPresentation):
    return FiniteOps(kappa) if kappa.is_finite() else PresentationOps(kappa)


# ---------------------------------------------------------------------------
# Laurent series with absolute precision


class Laurent:
    """sum c_i pi^i for i < prec; prec None means the sum is exact."""

    __slots__ = ("ops", "terms", "prec")

    def __init__(self, ops, terms: Dict[int, object], prec: Optional[int]):
        self.ops = ops
        self.prec = prec
        self.terms = {i: c for i, c in terms.items() if (prec is None or i < prec) and not ops.is_zero(c)}

    @classmethod
    def constant(cls, ops, c, prec=None) -> "Laurent":
        return cls(ops, {0: c}, prec)

    @classmethod
    def monomial(cls, ops, c, k: int, prec=None) -> "Laurent":
        return cls(ops, {k: c}, prec)

    def valuation(self) -> Optional[int]:
        """Least exponent with a nonzero coefficient, None if the known part is zero."""
        return min(self.terms) if self.terms else None

    def _val_or_prec(self):
        v = self.valuation()
        if v is not None:
            return v
        return self.prec

    def truncate(self, prec: int) -> "Laurent":
        new = prec if self.prec is None else min(prec, self.prec)
        return Laurent(self.ops, self.terms, new)

    def coeff(self, i: int):
        return self.terms.get(i, self.ops.zero)

    def _combine_prec(self, other):
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def __add__(self, other: "Laurent") -> "Laurent":
        ops = self.ops
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = ops.add(out[i], c) if i in out else c
        return Laurent(ops, out, self._combine_prec(other))

    def __neg__(self) -> "Laurent":
        return Laurent(self.ops, {i: self.ops.neg(c) for i, c in self.terms.items()}, self.prec)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        ops = self.ops
        va, vb = self._val_or_prec(), other._val_or_prec()
        precs = []
        if self.prec is not None and vb is not None:
            precs.append(self.prec + vb)
        if other.prec is not None and va is not None:
            precs.append(other.prec + va)
        prec = min(precs) if precs else None
        out: Dict[int, object] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if prec is not None and k >= prec:
                    continue
                m = ops.mul(a, b)
                out[k] = ops.add(out[k], m) if k in out else m
        return Laurent(ops, out, prec)

    def scale(self, c) -> "Laurent":
        return Laurent(self.ops, {i: self.ops.mul(c, a) for i, a in self.terms.items()}, self.prec)

    def shift(self, k: int) -> "Laurent":
        return Laurent(self.ops, {i + k: c for i, c in self.terms.items()},
                       None if self.prec is None else self.prec + k)

    def inverse(self) -> "Laurent":
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series is zero to the known precision")
        if self.prec is None:
            raise ValueError("inverse of an exact series needs a target precision; use inverse_to")
        return self.inverse_to(self.prec - 2 * v)

    def inverse_to(self, prec: int) -> "Laurent":
        """Inverse known modulo pi^prec (prec counted for the result)."""
        ops = self.ops
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series is zero to the known precision")
        unit = self.shift(-v)
        if unit.prec is not None:
            prec = min(prec, unit.prec - v)
        length = prec + v
        u0inv = ops.inv(unit.coeff(0))
        w = [u0inv]
        for k in range(1, max(length, 1)):
            acc = ops.zero
            for j in range(1, k + 1):
                uj = unit.terms.get(j)
                if uj is not None:
                    acc = ops.add(acc, ops.mul(uj, w[k - j]))
            w.append(ops.neg(ops.mul(u0inv, acc)))
        return Laurent(ops, {i - v: c for i, c in enumerate(w[:max(length, 0)])}, prec)

    def __pow__(self, k: int) -> "Laurent":
        if k < 0:
            return self.inverse() ** (-k)
        result = Laurent.constant(self.ops, self.ops.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def equal_mod(self, other: "Laurent", N: int) -> bool:
        return all(i >= N for i in (self - other).terms)

    def show(self, symbol: str = "pi") -> str:
        if not self.terms:
            body = "0"
        else:
            parts = []
            for i in sorted(self.terms):
                c = self.ops.show(self.terms[i])
                if i == 0:
                    parts.append(c)
                    continue
                mono = symbol if i == 1 else f"{symbol}^{i}" if i > 0 else f"{symbol}^({i})"
                parts.append(mono if c == "1" else f"({c})*{mono}")
            body = " + ".join(parts)
        if self.prec is not None:
            body += f" + O({symbol}^{self.prec})"
        return body

    def __repr__(self):
        return f"Laurent({self.show()})"


# ---------------------------------------------------------------------------
# the model


@dataclass(eq=False)
class TruncatedModel:
    """kappa((pi)) truncated at pi^N, with the transport of the place's field."""

    place: PlacePresentation
    kappa: FieldPresentation
    precision: int
    ops: object
    fixed: Tuple[str, ...]
    solved: Tuple[str, ...]
    cap_neg: int = CAP_NEG
    symbol: str = "pi"
    grid_width: int = 3
    named: Dict[str, Laurent] = field(default_factory=dict)
    _images: Dict[int, Dict[str, Laurent]] = field(default_factory=dict, repr=False)
    _grid: Optional[List[Laurent]] = field(default=None, repr=False)

    exhaustive = False

    # -- element construction ------------------------------------------------
    def element(self, terms: Dict[int, object]) -> Laurent:
        return self.canon(Laurent(self.ops, terms, None))

    def canon(self, x: Laurent) -> Laurent:
        out = Laurent(self.ops, x.terms, self.precision)
        if any(i < -self.cap_neg for i in out.terms):
            raise ValueCapExceeded(f"pole order exceeds the cap {self.cap_neg}")
        return out

    def pi(self, k: int = 1) -> Laurent:
        return self.element({k: self.ops.one})

    def lift_residue(self, x) -> Laurent:
        """The section: a residue (FieldElement of kappa) as a constant series."""
        if isinstance(x, str):
            x = self.kappa.element(x)
        return self.element({0: self.ops.lift(x)})

    def residue(self, x: Laurent):
        if any(i < 0 for i in x.terms):
            return None
        return self.ops.to_element(x.coeff(0))

    def valuation(self, x: Laurent) -> Optional[int]:
        """v(x) when x is nonzero mod pi^N, else None."""
        v = x.valuation()
        return v if v is not None and v < self.precision else None

    # -- transport -------------------------------------------------------------
    def images(self, prec: int) -> Dict[str, Laurent]:
        if prec not in self._images:
            self._images[prec] = _solve_images(self, prec)
        return self._images[prec]

    def transport(self, f, budget: Budget | None = None) -> Laurent:
        """The image of an element of the place's field, exact mod pi^N."""
        x = to_local(self.place, f)
        W = self.precision + 2 * self.cap_neg
        for _ in range(4):
            imgs = self.images(W)
            num = _eval_series(x.num, imgs, self.ops, W)
            den = _eval_series(x.den, imgs, self.ops, W)
            v = den.valuation()
            if v is None:
                W *= 2
                continue
            out = num * den.inverse()
            if out.prec is not None and out.prec >= self.precision:
                return self.canon(out)
            W *= 2
        raise PrecisionTooLow("working precision did not reach pi^N")

    # -- the evaluator interface ------------------------------------------------
    def candidates(self) -> List[Laurent]:
        if self._grid is None:
            self._grid = _build_grid(self)
        return self._grid

    def const(self, text: str) -> Laurent:
        if text in self.named:
            return self.named[text]
        try:
            return self.transport(self.place.field.element(text))
        except (ValueError, KeyError, SyntaxError) as exc:
            raise UnknownConstant(f"constant `{text}` cannot be read in the model: {exc}") from None

    def from_int(self, n: int) -> Laurent:
        return self.element({0: self.ops.from_int(n)})

    def add(self, a, b):
        return self.canon(a + b)

    def sub(self, a, b):
        return self.canon(a - b)

    def mul(self, a, b):
        return self.canon(Laurent(self.ops, a.terms, None) * Laurent(self.ops, b.terms, None))

    def neg(self, a):
        return -a

    def power(self, a, k: int):
        out = self.from_int(1)
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def equal(self, a, b) -> bool:
        return a.equal_mod(b, self.precision)

    def in_O(self, a) -> bool:
        return all(i >= 0 for i in a.terms)

    def uniformiser(self) -> Laurent:
        return self.pi()

    def show(self, a: Laurent) -> str:
        return a.show(self.symbol)

    def describe(self) -> str:
        return f"truncated completion at {self.place.label} mod {self.symbol}^{self.precision}"

    def to_json(self) -> dict:
        return {
            "place": self.place.label,
            "residue": self.kappa.to_json(),
            "precision": self.precision,
            "fixed": list(self.fixed),
            "solved": list(self.solved),
            "elements": {k: self.show(v) for k, v in self.named.items()},
        }


def _eval_series(f: MultiPoly, images: Dict[str, Laurent], ops, prec: int) -> Laurent:
    acc = Laurent(ops, {}, None)
    powers: Dict[Tuple[str, int], Laurent] = {}
    names = f.ring.names
    for e, c in f.terms.items():
        term = Laurent.constant(ops, ops.from_int(c))
        for n, k in zip(names, e):
            if k:
                key = (n, k)
                if key not in powers:
                    powers[key] = (images[n] ** k).truncate(prec)
                term = (term * powers[key]).truncate(prec)
        acc = acc + term
    return acc.truncate(prec)


def _choose_unknowns(place: PlacePresentation, budget: Budget):
    A = place.algebra
    eqs = list(A.relations) + [place.uniformiser]
    ideal = place.residue_field.gb
    gens = list(A.generators)
    consts = set(place.constants)
    m = len(eqs)
    subsets = sorted(itertools.combinations(gens, m), key=lambda U: (sum(u in consts for u in U), U))
    for U in subsets:
        J = [[g.diff(u) for u in U] for g in eqs]
        if rank(J, ideal, budget) == m:
            return tuple(U), eqs
    raise UnsupportedPresentation("no set of generators can be solved for by Newton iteration")


def complete_at(place: PlacePresentation, N: int, budget: Budget | None = None, grid_width: int = 3) -> TruncatedModel:
    """The truncated completion of the place modulo pi^N."""
    budget = ensure(budget)
    if N < 1:
        raise PrecisionTooLow("precision must be at least 1")
    kappa = place.residue_field
    ops = coefficient_ops(kappa)
    U, _ = _choose_unknowns(place, budget)
    fixed = tuple(n for n in place.algebra.generators if n not in U)
    model = TruncatedModel(place, kappa, N, ops, fixed, U, grid_width=grid_width)
    imgs = model.images(N + 2 * CAP_NEG)
    for n in place.algebra.generators:
        model.named[n] = model.canon(imgs[n])
    return model


def _solve_images(model: TruncatedModel, prec: int) -> Dict[str, Laurent]:
    place, ops, kappa = model.place, model.ops, model.kappa
    A = place.algebra
    eqs = list(A.relations) + [place.uniformiser]
    U = list(model.solved)
    images = {n: Laurent.constant(ops, ops.lift(kappa.gen(n)), prec) for n in A.generators}
    for n in model.fixed:
        images[n] = Laurent.constant(ops, ops.lift(kappa.gen(n)))
    J0 = [[ops.lift(kappa.element(g.diff(u))) for u in U] for g in eqs]
    Jinv = _invert(ops, J0)
    target = [Laurent(ops, {}, None)] * len(A.relations) + [Laurent.monomial(ops, ops.one, 1)]
    for _ in range(prec + 1):
        F = [(_eval_series(g, images, ops, prec) - t).truncate(prec) for g, t in zip(eqs, target)]
        if all(f.is_zero() for f in F):
            break
        for i, u in enumerate(U):
            corr = Laurent(ops, {}, None)
            for j, f in enumerate(F):
                corr = corr + f.scale(Jinv[i][j])
            images[u] = (images[u] - corr).truncate(prec)
    for u in U:
        images[u] = images[u].truncate(prec)
    return images


def _invert(ops, M):
    n = len(M)
    A = [list(row) + [ops.one if i == j else ops.zero for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        pr = next(i for i in range(c, n) if not ops.is_zero(A[i][c]))
        A[c], A[pr] = A[pr], A[c]
        inv = ops.inv(A[c][c])
        A[c] = [ops.mul(inv, x) for x in A[c]]
        for i in range(n):
            if i != c and not ops.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def _residue_subset(model: TruncatedModel) -> List[object]:
    ops, kappa = model.ops, model.kappa
    out = [ops.one, ops.from_int(-1)]
    for n in kappa.generators:
        c = ops.lift(kappa.gen(n))
        if not ops.is_zero(c) and all(not ops.is_zero(ops.sub(c, d)) or False for d in out):
            out.append(c)
    if isinstance(ops, FiniteOps) and ops.F.degree > 1:
        out.append(ops.F.generator_element())
    for k in range(2, kappa.p - 1):
        c = ops.from_int(k)
        if all(not ops.is_zero(ops.sub(c, d)) for d in out):
            out.append(c)
    return out[:model.grid_width + 1]


def _build_grid(model: TruncatedModel) -> List[Laurent]:
    """0, 1, the named elements, then c*pi^i for i in [-2, N) and c in a small residue subset."""
    seen: List[Laurent] = []

    def push(x):
        if not any(x.equal_mod(y, model.precision) and set(x.terms) == set(y.terms) for y in seen):
            seen.append(x)

    push(model.from_int(0))
    push(model.from_int(1))
    for x in model.named.values():
        push(x)
    for i in range(-2, model.precision):
        for c in _residue_subset(model):
            push(model.element({i: c}))
    return seen


# ---------------------------------------------------------------------------
# refutation search


@dataclass
class Refutation:
    gamma: str
    ts: Tuple[str, ...]
    coefficients: Dict[Tuple[int, ...], Laurent]
    xhat: Laurent
    value: Optional[int]
    reason: str

    def to_json(self, model: TruncatedModel) -> dict:
        return {
            "gamma": self.gamma,
            "t": list(self.ts),
            "coefficients": {"".join(map(str, a)) or "()": model.show(x) for a, x in self.coefficients.items()},
            "xhat": model.show(self.xhat),
            "value": self.value if self.value is not None else f">={model.precision}",
            "reason": self.reason,
        }


@dataclass
class RefutationResult:
    counterexample: Optional[Refutation]
    exhausted: bool = False
    tried: int = 0

    @property
    def found(self) -> bool:
        return self.counterexample is not None


def adhoc_refute(model: TruncatedModel, T: Sequence[str], search_budget: int = 20000,
                 max_size: Optional[int] = None) -> RefutationResult:
    """Search for a violation of the ad-hoc criterion for the dt (x) 1, t in T.

    For distinct gamma, t_1..t_n in T and coefficients x_alpha in O, the
    element xhat = gamma - sum x_alpha^p t^alpha must be a unit, or have value
    exactly 1 with the residues of the t_i p-independent.
    """
    if model.precision < 2:
        raise PrecisionTooLow("refutation needs precision at least 2")
    T = [str(t) for t in T]
    p = model.kappa.p
    imgs = {t: model.const(t) for t in T}
    integral = [x for x in model.candidates() if model.in_O(x)]
    tried = 0
    size = len(T) if max_size is None else min(max_size, len(T))
    for k in range(size):
        for choice in itertools.permutations(T, k + 1):
            gamma, ts = choice[0], choice[1:]
            alphas = list(itertools.product(range(p), repeat=len(ts)))
            monos = []
            for alpha in alphas:
                m = model.from_int(1)
                for t, a in zip(ts, alpha):
                    m = model.mul(m, model.power(imgs[t], a))
                monos.append(m)
            dependent = None
            for xs in _coefficient_choices(model, gamma, ts, imgs, integral, alphas):
                tried += 1
                if tried > search_budget:
                    return RefutationResult(None, True, tried)
                xhat = imgs[gamma]
                for x, m in zip(xs, monos):
                    xhat = model.sub(xhat, model.mul(model.power(x, p), m))
                v = model.valuation(xhat)
                if v is not None and v < 1:
                    continue
                coeffs = dict(zip(alphas, xs))
                if v is None or v >= 2:
                    return RefutationResult(Refutation(gamma, ts, coeffs, xhat, v, "xhat lies in m^2"), False, tried)
                if dependent is None:
                    dependent = not _residues_independent(model, [imgs[t] for t in ts])
                if dependent:
                    return RefutationResult(
                        Refutation(gamma, ts, coeffs, xhat, v, "xhat generates m but the residues of t are p-dependent"),
                        False, tried)
    return RefutationResult(None, False, tried)


def _residues_independent(model: TruncatedModel, xs: Sequence[Laurent]) -> bool:
    if not xs:
        return True
    residues = [model.residue(x) for x in xs]
    return p_independent(residues, model.kappa)


def _coefficient_choices(model, gamma, ts, imgs, integral, alphas):
    """Lifted p-th roots first, then the grid of integral elements."""
    if not ts:
        r = model.residue(imgs[gamma])
        if r is not None:
            root = is_pth_power(r, model.kappa)
            if root is not None:
                yield (model.lift_residue(root),)
    yield from itertools.product(integral, repeat=len(alphas))


# ---------------------------------------------------------------------------
# embeddings


@dataclass(eq=False)
class EmbeddingMap:
    source: TruncatedModel
    target: TruncatedModel
    residue_images: Dict[str, FieldElement]
    pi_image: Laurent
    kind: str
    gamma: Optional[str] = None
    xhat: Optional[Laurent] = None
    yhat: Optional[Laurent] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def precision(self) -> int:
        return min(self.source.precision, self.target.precision)

    def residue_map(self, c: FieldElement) -> FieldElement:
        return _apply_residue(self.residue_images, c, self.target.kappa)

    def __call__(self, x: Laurent) -> Laurent:
        R, S = self.source, self.target
        out = Laurent(S.ops, {}, None)
        N = self.precision
        power_cache: Dict[int, Laurent] = {}
        for i, c in x.terms.items():
            if i >= N:
                continue
            if i not in power_cache:
                power_cache[i] = self._pi_power(i)
            image = S.ops.lift(self.residue_map(R.ops.to_element(c)))
            out = out + power_cache[i].scale(image)
        return S.canon(out.truncate(N))

    def _pi_power(self, i: int) -> Laurent:
        S = self.target
        base = self.pi_image
        if i >= 0:
            return Laurent(S.ops, base.terms, None) ** i if i else Laurent.constant(S.ops, S.ops.one)
        inv = Laurent(S.ops, base.terms, self.precision + 2 * S.cap_neg).inverse()
        return inv ** (-i)

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "precision": self.precision,
            "pi_image": self.target.show(self.pi_image.truncate(self.precision)),
            "residue_map": {k: str(v) for k, v in self.residue_images.items()},
            "checks": dict(self.checks),
        }
        if self.gamma is not None:
            doc["gamma"] = self.gamma
            doc["xhat"] = self.source.show(self.xhat)
            doc["yhat"] = self.target.show(self.yhat)
        return doc


def _apply_residue(images: Dict[str, FieldElement], c: FieldElement, target: FieldPresentation) -> FieldElement:
    from .valuation import _eval_in

    return _eval_in(c.num, images, target) / _eval_in(c.den, images, target)


def _check_residue_embedding(R: TruncatedModel, S: TruncatedModel, phi: Dict[str, str]) -> Dict[str, FieldElement]:
    kR, kS = R.kappa, S.kappa
    images = {}
    for n in kR.generators:
        if n not in phi:
            raise ResidueEmbeddingInvalid(f"no image given for the residue generator {n}")
        try:
            images[n] = kS.element(phi[n])
        except Exception as exc:
            raise ResidueEmbeddingInvalid(f"image of {n} is not an element of the target residue field: {exc}") from None
    for r in kR.relations:
        from .valuation import _eval_in

        if not _eval_in(r, images, kS).is_zero():
            raise ResidueEmbeddingInvalid(f"relation {r} does not map to zero")
    for c in R.place.constants:
        if c not in S.kappa.generators:
            raise ResidueEmbeddingInvalid(f"constant {c} is missing in the target")
        if not images[c] == kS.gen(c):
            raise ResidueEmbeddingInvalid(f"the residue map moves the constant {c}")
    return images


def _require_smooth(model: TruncatedModel, budget: Budget):
    from .smoothness import formally_smooth_over

    verdict = formally_smooth_over(model.place, budget=budget)
    if not verdict.verdict:
        raise NotFormallySmooth(f"{model.place.label} is not formally smooth over its constants")


def _is_constant_series(x: Laurent) -> bool:
    return set(x.terms) <= {0}


def _reversion(f: Laurent, ops, prec: int) -> Laurent:
    """g with f(g(z)) = z mod z^prec, for f = f_1 z + f_2 z^2 + ..."""
    f1inv = ops.inv(f.coeff(1))
    z = Laurent.monomial(ops, ops.one, 1)
    g = z.scale(f1inv).truncate(prec)
    for _ in range(prec):
        comp = _compose(f, g, ops, prec)
        err = (comp - z).truncate(prec)
        if err.is_zero():
            break
        g = (g - err.scale(f1inv)).truncate(prec)
    return g


def _compose(f: Laurent, g: Laurent, ops, prec: int) -> Laurent:
    out = Laurent(ops, {}, prec)
    power = Laurent.constant(ops, ops.one, prec)
    top = max(f.terms) if f.terms else 0
    for i in range(0, top + 1):
        c = f.terms.get(i)
        if c is not None:
            out = out + power.scale(c)
        power = (power * g).truncate(prec)
    return out.truncate(prec)


def build_embedding(R: TruncatedModel, S: TruncatedModel, residue_embedding: Dict[str, str],
                    N: Optional[int] = None, basis: Optional[Sequence[str]] = None,
                    budget: Budget | None = None, samples: int = 20, seed: int = 0) -> EmbeddingMap:
    """The C-embedding R -> S inducing the given residue embedding, mod pi^N."""
    budget = ensure(budget)
    N = N if N is not None else min(R.precision, S.precision)
    if N < 2:
        raise PrecisionTooLow("embeddings need precision at least 2")
    if R.precision != N:
        R = complete_at(R.place, N, budget)
    if S.precision != N:
        S = complete_at(S.place, N, budget)
    _require_smooth(R, budget)
    _require_smooth(S, budget)
    images = _check_residue_embedding(R, S, residue_embedding)
    T = list(basis) if basis is not None else list(R.place.constants)
    W = N + 2 * CAP_NEG
    gamma = None
    root = None
    for t in T:
        r = R.residue(R.transport(t))
        root = is_pth_power(r, R.kappa, budget)
        if root is not None:
            gamma = t
            break
    for t in T:
        if t == gamma:
            continue
        if not (_is_constant_series(R.transport(t)) and _is_constant_series(S.transport(t))):
            raise UnsupportedPresentation(f"{t} is not in the coefficient field of the presentation")
    if gamma is None:
        emb = EmbeddingMap(R, S, images, S.pi(), "separable")
    else:
        p = R.kappa.p
        a = Laurent.constant(R.ops, R.ops.lift(root))
        b_el = _apply_residue(images, root, S.kappa)
        b = Laurent.constant(S.ops, S.ops.lift(b_el))
        xhat = _transport_at(R, gamma, W) - a ** p
        yhat = _transport_at(S, gamma, W) - b ** p
        if xhat.valuation() != 1 or yhat.valuation() != 1:
            raise NotFormallySmooth(f"{gamma} - lift^p is not a uniformiser")
        g = _reversion(xhat, R.ops, W)
        g_image = Laurent(S.ops, {}, None)
        power = Laurent.constant(S.ops, S.ops.one)
        for i in range(1, W):
            power = (power * yhat).truncate(W)
            c = g.terms.get(i)
            if c is not None:
                coeff = S.ops.lift(_apply_residue(images, R.ops.to_element(c), S.kappa))
                g_image = g_image + power.scale(coeff)
        emb = EmbeddingMap(R, S, images, g_image.truncate(W), "inseparable", gamma,
                           R.canon(xhat), S.canon(yhat))
    emb.checks = verify_embedding(emb, samples=samples, seed=seed)
    if not all(emb.checks.values()):
        failed = [k for k, v in emb.checks.items() if not v]
        raise ArithmeticError(f"embedding failed its checks: {failed}")
    return emb


def _transport_at(model: TruncatedModel, t: str, W: int) -> Laurent:
    x = to_local(model.place, t)
    imgs = model.images(W)
    num = _eval_series(x.num, imgs, model.ops, W)
    den = _eval_series(x.den, imgs, model.ops, W)
    return (num * den.inverse()).truncate(W)


def random_integral(model: TruncatedModel, rng: random.Random, terms: int = 3) -> Laurent:
    pool = _residue_subset(model) + [model.ops.zero]
    named = [x for x in model.named.values() if model.in_O(x)]
    x = model.from_int(0)
    for _ in range(terms):
        c = rng.choice(pool)
        i = rng.randrange(0, model.precision)
        x = model.add(x, model.element({i: c}))
    if named and rng.random() < 0.5:
        x = model.add(x, model.mul(rng.choice(named), model.element({rng.randrange(0, 2): rng.choice(pool)})))
    return x


def verify_embedding(emb: EmbeddingMap, samples: int = 20, seed: int = 0) -> Dict[str, bool]:
    R, S = emb.source, emb.target
    N = emb.precision
    rng = random.Random(seed)
    hom = True
    residue = True
    for _ in range(samples):
        a, b = random_integral(R, rng), random_integral(R, rng)
        ia, ib = emb(a), emb(b)
        if not emb(R.add(a, b)).equal_mod(S.add(ia, ib), N):
            hom = False
        if not emb(R.mul(a, b)).equal_mod(S.mul(ia, ib), N):
            hom = False
        ra = R.residue(a)
        if ra is not None and not S.residue(ia) == emb.residue_map(ra):
            residue = False
    fixes = all(emb(R.transport(c)).equal_mod(S.transport(c), N) for c in _c_samples(R, rng))
    return {"homomorphism": hom, "fixes_C": fixes, "residue_compatible": residue}


def _c_samples(model: TruncatedModel, rng: random.Random) -> List[str]:
    consts = list(model.place.constants)
    out = ["1", "2"] + consts
    for _ in range(4):
        if not consts:
            break
        terms = []
        for c in consts:
            terms.append(f"{rng.randrange(1, model.kappa.p)}*{c}^{rng.randrange(0, 4)}")
        out.append(" + ".join(terms) + " + 1")
    return out
