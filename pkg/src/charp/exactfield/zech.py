"""GF(p^d) in Zech-logarithm form, for fast randomized linear algebra.

Nonzero elements are stored as discrete logs in [0, q - 1) and zero as ZERO.
Multiplication adds logs; addition uses the table Z[n] = log(1 + g^n).
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Sequence

from . import finite as ff

ZERO = -1

# field sizes used by the oracle: large enough for a small Schwartz-Zippel bound,
# small enough that the tables build in well under a second
DEFAULT_DEGREE = {2: 16, 3: 10, 5: 7, 7: 6}


class ZechField:
    def __init__(self, p: int, d: int):
        self.p, self.d = p, d
        self.q = p ** d
        self.order = self.q - 1
        self.exp, self.log = self._tables()
        self.zech = self._zech()
        self.minus_one = 0 if p == 2 else self.order // 2

    def _tables(self):
        p, d, q = self.p, self.d, self.q
        for f in ff.monic_irreducibles(ff.GF(p), d):
            low = [(-c) % p for c in f[:d]]  # x^d = sum low[i] x^i
            exp = [0] * (q - 1)
            code = 1
            ok = True
            for n in range(q - 1):
                if n and code == 1:
                    ok = False
                    break
                exp[n] = code
                top = code // p ** (d - 1)
                code = (code % p ** (d - 1)) * p
                if top:
                    code = _add_codes(code, _scale_code(low, top, p), p, d)
            if ok and code == 1:
                log = [ZERO] * q
                for n, c in enumerate(exp):
                    log[c] = n
                return exp, log
        raise ArithmeticError(f"no primitive polynomial of degree {d} over F_{p}")

    def _zech(self) -> List[int]:
        p = self.p
        out = [ZERO] * self.order
        for n, c in enumerate(self.exp):
            one_plus = c - c % p + (c % p + 1) % p
            out[n] = self.log[one_plus] if one_plus else ZERO
        return out

    def from_int(self, n: int) -> int:
        n %= self.p
        return ZERO if n == 0 else self.log[n]

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % self.order

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        z = self.zech[(b - a) % self.order]
        return ZERO if z == ZERO else (a + z) % self.order

    def neg(self, a: int) -> int:
        return a if a == ZERO else (a + self.minus_one) % self.order

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.order

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        """Rank of a matrix with entries in log form (destroys nothing; copies rows)."""
        M = [list(r) for r in rows]
        if not M:
            return 0
        ncols = len(M[0])
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(M)) if M[i][c] != ZERO), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            prow = M[r]
            pinv = self.inv(prow[c])
            for i in range(r + 1, len(M)):
                row = M[i]
                if row[c] == ZERO:
                    continue
                f = self.neg(self.mul(row[c], pinv))
                for j in range(c, ncols):
                    if prow[j] != ZERO:
                        row[j] = self.add(row[j], (prow[j] + f) % self.order)
            r += 1
            if r == len(M):
                break
        return r


def _add_codes(a: int, b: int, p: int, d: int) -> int:
    if p == 2:
        return a ^ b
    out, scale = 0, 1
    for _ in range(d):
        out += ((a % p + b % p) % p) * scale
        a //= p
        b //= p
        scale *= p
    return out


def _scale_code(digits: Sequence[int], c: int, p: int) -> int:
    out, scale = 0, 1
    for x in digits:
        out += (x * c % p) * scale
        scale *= p
    return out


@lru_cache(maxsize=None)
def zech_field(p: int, d: int | None = None) -> ZechField:
    return ZechField(p, d or DEFAULT_DEGREE.get(p, 4))
