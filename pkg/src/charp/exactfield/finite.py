"""Finite fields and dense univariate polynomials over them.

``GF(p)`` elements are plain ints; ``GF(p, modulus)`` elements are tuples of
length ``d`` (coefficients on the power basis of a root of ``modulus``).
Univariate polynomials are coefficient lists, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import List, Sequence, Tuple


class GF:
    """F_q for q = p^d, d = len(modulus) - 1 (modulus monic, irreducible over F_p)."""

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        self.p = p
        if modulus is None or len(modulus) <= 2:
            self.modulus = None
            self.degree = 1
        else:
            modulus = [c % p for c in modulus]
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            self.modulus = tuple(modulus)
            self.degree = len(modulus) - 1
        self.q = p**self.degree
        self.zero = 0 if self.degree == 1 else (0,) * self.degree
        self.one = 1 if self.degree == 1 else (1,) + (0,) * (self.degree - 1)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    # element arithmetic ----------------------------------------------------
    def add(self, a, b):
        if self.degree == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.degree == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.degree == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        p = self.p
        if self.degree == 1:
            return a * b % p
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        m = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(d):
                    prod[k - d + j] -= c * m[j]
            prod[k] = 0
        return tuple(c % p for c in prod[:d])

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        n %= self.p
        return n if self.degree == 1 else (n,) + (0,) * (self.degree - 1)

    def generator_element(self):
        """The class of x (the root of the modulus)."""
        if self.degree == 1:
            raise ValueError("prime field has no adjoined root")
        return (0, 1) + (0,) * (self.degree - 2)

    def elements(self):
        if self.degree == 1:
            return list(range(self.p))
        return [tuple(c) for c in itertools.product(range(self.p), repeat=self.degree)]

    def random(self, rng: random.Random):
        if self.degree == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def pth_root(self, a):
        # Frobenius is an automorphism of order d; its inverse is x -> x^(p^(d-1))
        return self.pow(a, self.p ** (self.degree - 1))

    def to_str(self, a, name: str = "a") -> str:
        if self.degree == 1:
            return str(a)
        parts = []
        for i, c in enumerate(a):
            if c:
                mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
                parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# dense polynomials


def trim(F: GF, f: List) -> List:
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def deg(f) -> int:
    return len(f) - 1


def padd(F, f, g):
    n = max(len(f), len(g))
    out = [F.add(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(F, out)


def psub(F, f, g):
    n = max(len(f), len(g))
    out = [F.sub(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(F, out)


def pmul(F, f, g):
    if not f or not g:
        return []
    if F.degree == 1:
        p = F.p
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] += a * b
        return trim(F, [c % p for c in out])
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not F.is_zero(a):
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(F, out)


def pscale(F, f, c):
    return trim(F, [F.mul(a, c) for a in f])


def pdivmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], F.p - 2, F.p) if F.degree == 1 else F.inv(g[-1])
    if len(f) < len(g):
        return [], trim(F, f)
    if F.degree == 1:
        p = F.p
        q = [0] * (len(f) - dg)
        for k in range(len(f) - 1, dg - 1, -1):
            c = f[k] % p
            if not c:
                continue
            c = c * inv % p
            q[k - dg] = c
            base = k - dg
            for j in range(dg + 1):
                f[base + j] -= c * g[j]
        return trim(F, q), trim(F, [c % p for c in f[:dg]])
    q = [F.zero] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv)
        q[k - dg] = c
        for j in range(dg + 1):
            f[k - dg + j] = F.sub(f[k - dg + j], F.mul(c, g[j]))
    return trim(F, q), trim(F, f[:dg])


def pmod(F, f, g):
    return pdivmod(F, f, g)[1]


def monic(F, f):
    if not f:
        return f
    return pscale(F, f, F.inv(f[-1]))


def pgcd(F, f, g):
    while g:
        f, g = g, pmod(F, f, g)
    return monic(F, f)


def pderiv(F, f):
    return trim(F, [F.mul(F.from_int(i), f[i]) for i in range(1, len(f))])


def ppowmod(F, f, n: int, m):
    result = [F.one]
    f = pmod(F, f, m)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, f), m)
        f = pmod(F, pmul(F, f, f), m)
        n >>= 1
    return result


def peval(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _pth_root_poly(F, f):
    p = F.p
    return trim(F, [F.pth_root(f[i]) for i in range(0, len(f), p)])


def squarefree_decomposition(F, f) -> List[Tuple[list, int]]:
    """Monic squarefree factors with multiplicities (characteristic-p aware)."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    out = []
    p = F.p
    i = 1
    df = pderiv(F, f)
    if df:
        c = pgcd(F, f, df)
        w = pdivmod(F, f, c)[0]
        while len(w) > 1:
            y = pgcd(F, w, c)
            z = pdivmod(F, w, y)[0]
            if len(z) > 1:
                out.append((z, i))
            i += 1
            w = y
            c = pdivmod(F, c, y)[0]
        if len(c) > 1:
            for g, m in squarefree_decomposition(F, _pth_root_poly(F, c)):
                out.append((g, m * p))
    else:
        for g, m in squarefree_decomposition(F, _pth_root_poly(F, f)):
            out.append((g, m * p))
    merged = {}
    for g, m in out:
        key = tuple(g)
        merged[key] = merged.get(key, 0) + m
    return [(list(k), m) for k, m in merged.items()]


def distinct_degree(F, f) -> List[Tuple[list, int]]:
    out = []
    q = F.q
    x = [F.zero, F.one]
    h = x
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = ppowmod(F, h, q, f)
        g = pgcd(F, f, psub(F, h, x))
        if len(g) > 1:
            out.append((g, i))
            f = pdivmod(F, f, g)[0]
            h = pmod(F, h, f)
    if len(f) > 1:
        out.append((monic(F, f), len(f) - 1))
    return out


def equal_degree(F, f, d: int, rng: random.Random) -> List[list]:
    """Split a monic squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.q
    while True:
        a = trim(F, [F.random(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        if q % 2:
            b = ppowmod(F, a, (q**d - 1) // 2, f)
            b = psub(F, b, [F.one])
        else:
            # trace map to F_2 for characteristic two
            b = a
            t = a
            for _ in range(F.degree * d - 1):
                t = pmod(F, pmul(F, t, t), f)
                b = padd(F, b, t)
        g = pgcd(F, f, b)
        if 1 < len(g) < len(f):
            return equal_degree(F, g, d, rng) + equal_degree(F, pdivmod(F, f, g)[0], d, rng)


def factor(F, f, seed: int = 0) -> List[Tuple[list, int]]:
    """Monic irreducible factors with multiplicities, sorted deterministically."""
    if not f:
        raise ValueError("cannot factor zero")
    rng = random.Random(seed)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for piece in equal_degree(F, h, d, rng):
                out.append((monic(F, piece), m))
    out.sort(key=lambda fm: (len(fm[0]), [_elem_key(F, c) for c in reversed(fm[0])], fm[1]))
    return out


def _elem_key(F, c):
    return c if F.degree == 1 else tuple(c)


def is_irreducible(F, f) -> bool:
    """Rabin's test."""
    f = monic(F, f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.q
    x = [F.zero, F.one]
    primes = [r for r in range(2, n + 1) if n % r == 0 and all(r % s for s in range(2, r))]
    # frob[k] = x^(q^k) mod f
    frob = [x]
    for _ in range(n):
        frob.append(ppowmod(F, frob[-1], q, f))
    for r in primes:
        if len(pgcd(F, f, psub(F, frob[n // r], x))) > 1:
            return False
    return not psub(F, frob[n], x)


def roots(F, f) -> list:
    return [F.neg(g[0]) for g, _ in factor(F, f) if len(g) == 2]


_SIEVE_LIMIT = 200_000


def monic_irreducibles(F, degree: int):
    """All monic irreducible polynomials of the given degree, in a fixed order."""
    elems = F.elements()
    if F.degree == 1 and degree > 1 and F.q ** degree <= _SIEVE_LIMIT:
        reducible = _reducible_set(F.p, degree)
        for coeffs in itertools.product(elems, repeat=degree):
            f = tuple(reversed(coeffs)) + (1,)
            if f not in reducible:
                yield list(f)
        return
    for coeffs in itertools.product(elems, repeat=degree):
        f = list(reversed(coeffs)) + [F.one]
        if degree == 1 or (not F.is_zero(f[0]) and is_irreducible(F, f)):
            yield f


@lru_cache(maxsize=32)
def _reducible_set(p: int, degree: int) -> frozenset:
    """Monic reducible polynomials of the given degree over F_p: g*h with g irreducible, deg g <= degree/2."""
    F = GF(p)
    out = set()
    for k in range(1, degree // 2 + 1):
        for g in monic_irreducibles(F, k):
            for coeffs in itertools.product(range(p), repeat=degree - k):
                h = list(coeffs) + [1]
                out.add(tuple(pmul(F, g, h)))
    return frozenset(out)


@lru_cache(maxsize=None)
def necklace_count(q: int, n: int) -> int:
    """Number of monic irreducibles of degree n over F_q (Moebius formula)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * q ** (n // d)
    return total // n


def _mobius(n: int) -> int:
    result = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    if n > 1:
        result = -result
    return result


def conway_like_modulus(p: int, d: int) -> List[int]:
    """The first monic irreducible of degree d over F_p in lexicographic order."""
    F = GF(p)
    return next(iter(monic_irreducibles(F, d)))
