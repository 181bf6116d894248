"""Sparse multivariate polynomials over a prime field.

A polynomial is a dict from exponent tuples to nonzero residues mod p.
Everything in the package (function fields, residue fields, local rings)
is presented over F_p, so this one coefficient domain is enough: base
transcendentals such as ``t`` are ordinary variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple

Exp = Tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeFieldElem:
    """An element of F_p; ``value`` is always reduced into ``[0, p)``."""

    value: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            return other.value
        return other % self.p

    def __add__(self, other):
        return PrimeFieldElem(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElem(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return PrimeFieldElem(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return PrimeFieldElem(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElem(pow(self.value, n, self.p), self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return PrimeFieldElem(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * PrimeFieldElem(self._other(other), self.p).inverse()

    def __int__(self):
        return self.value


class PolyRing:
    """F_p[names], with names in a fixed order."""

    __slots__ = ("p", "names", "nvars", "_index")

    def __init__(self, p: int, names: Sequence[str]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not _NAME_RE.match(n):
                raise ValueError(f"bad variable name {n!r}")
        self.p = p
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.names == other.names

    def __hash__(self):
        return hash((self.p, self.names))

    def __repr__(self):
        return f"PolyRing(p={self.p}, names={list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self.names}") from None

    def zero_exp(self) -> Exp:
        return (0,) * self.nvars

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c: int) -> "MultiPoly":
        c %= self.p
        return MultiPoly(self, {self.zero_exp(): c} if c else {})

    def gen(self, name: str) -> "MultiPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): 1})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, exp: Exp, c: int = 1) -> "MultiPoly":
        c %= self.p
        return MultiPoly(self, {tuple(exp): c} if c else {})

    def extend(self, more: Sequence[str], front: bool = False) -> "PolyRing":
        more = [m for m in more if m not in self._index]
        return PolyRing(self.p, (list(more) + list(self.names)) if front else (list(self.names) + list(more)))

    def parse(self, text: str) -> "MultiPoly":
        from .parsing import parse_rational

        num, den = parse_rational(text, self)
        if den.is_zero() or not den.is_constant():
            raise ValueError(f"{text!r} is not a polynomial")
        return num * pow(den.constant_coeff(), self.p - 2, self.p)


class MultiPoly:
    """Polynomial in ``ring``; ``terms`` never holds zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exp, int]):
        self.ring = ring
        self.terms = dict(terms)
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp() in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get(self.ring.zero_exp(), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, PrimeFieldElem):
            return self.ring.const(other.value)
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return MultiPoly._raw(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exp, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = (get(e, 0) + ca * cb) % p
        return MultiPoly._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "MultiPoly":
        c %= self.ring.p
        if not c:
            return self.ring.zero()
        p = self.ring.p
        return MultiPoly._raw(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, exp: Exp, c: int = 1) -> "MultiPoly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return MultiPoly._raw(
            self.ring, {tuple(x + y for x, y in zip(e, exp)): v * c % p for e, v in self.terms.items()}
        )

    def frobenius(self) -> "MultiPoly":
        """f^p computed termwise (coefficients in F_p are fixed by Frobenius)."""
        p = self.ring.p
        return MultiPoly._raw(self.ring, {tuple(k * p for k in e): c for e, c in self.terms.items()})

    def diff(self, name: str) -> "MultiPoly":
        i = self.ring.index(name)
        p = self.ring.p
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            v = c * k % p
            if v:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = v
        return MultiPoly._raw(self.ring, out)

    def jacobian_row(self) -> list:
        return [self.diff(n) for n in self.ring.names]

    # -- substitution / ring changes ----------------------------------------
    def subs(self, values: Mapping[str, "MultiPoly"], target: PolyRing = None) -> "MultiPoly":
        """Substitute polynomials (living in ``target``) for variables.

        Variables not listed are carried over by name into ``target``.
        """
        target = target or self.ring
        gens = []
        for n in self.ring.names:
            if n in values:
                v = values[n]
                if isinstance(v, int):
                    v = target.const(v)
                gens.append(v)
            else:
                gens.append(target.gen(n))
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = gens[i] ** k
            return cache[key]

        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, int]) -> int:
        p = self.ring.p
        vals = [point[n] % p for n in self.ring.names]
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(vals, e):
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    def to_ring(self, target: PolyRing) -> "MultiPoly":
        """Rename into ``target``, which must contain every variable used."""
        if target == self.ring:
            return self
        used = set(self.variables())
        idx = [target.index(n) if n in used else -1 for n in self.ring.names]
        z = [0] * target.nvars
        out = {}
        for e, c in self.terms.items():
            ne = list(z)
            for i, k in zip(idx, e):
                if k:
                    ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(target, out)

    def rename(self, mapping: Mapping[str, str], target: PolyRing) -> "MultiPoly":
        idx = [target.index(mapping.get(n, n)) for n in self.ring.names]
        z = [0] * target.nvars
        out = {}
        for e, c in self.terms.items():
            ne = list(z)
            for i, k in zip(idx, e):
                if k:
                    ne[i] += k
            ne = tuple(ne)
            v = (out.get(ne, 0) + c) % target.p
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return MultiPoly._raw(target, out)

    def coeffs_in(self, name: str) -> Dict[int, "MultiPoly"]:
        """View as a univariate polynomial in ``name``: degree -> coefficient."""
        i = self.ring.index(name)
        parts: Dict[int, Dict[Exp, int]] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(e[i], {})[ne] = c
        return {k: MultiPoly._raw(self.ring, v) for k, v in parts.items()}

    # -- comparison / display -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        pieces = []
        for e, c in self.sorted_terms():
            neg = p > 2 and c == p - 1
            mag = 1 if neg else c
            factors = []
            for n, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(n)
                elif k > 1:
                    factors.append(f"{n}^{k}")
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self})"
