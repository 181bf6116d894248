"""Exact linear algebra over F_p and over fraction fields Frac(F_p[X]/P).

Matrices over Frac(F_p[X]/P) are handled fraction-free: entries are
polynomials kept in normal form modulo P, and since P is prime the
quotient is a domain, so multiplying a row by a nonzero pivot never
changes the rank.  Pivots are chosen among the lowest-degree entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..budget import Budget, ensure
from .groebner import IdealHandle, normal_form
from .poly import MultiPoly

Matrix = List[List[MultiPoly]]


def _reducer(ideal: Optional[IdealHandle], budget: Budget):
    if ideal is None or ideal.is_zero():
        return lambda f: f
    return lambda f: normal_form(f, ideal, budget=budget)


@dataclass
class Echelon:
    rank: int
    rows: Matrix
    transform: Optional[Matrix]
    pivots: List[int]

    def kernel_rows(self) -> Matrix:
        """Left-kernel vectors: transform rows whose reduced row vanished."""
        if self.transform is None:
            raise ValueError("echelon form computed without tracking")
        return [self.transform[i] for i in range(self.rank, len(self.rows))]


def echelon(rows: Sequence[Sequence[MultiPoly]], ideal: Optional[IdealHandle], budget: Budget | None = None,
            track: bool = False, ring=None) -> Echelon:
    """Fraction-free row echelon form modulo the prime ``ideal``."""
    budget = ensure(budget)
    red = _reducer(ideal, budget)
    rows = [[red(e) for e in r] for r in rows]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    transform = None
    if track:
        if ring is None:
            ring = rows[0][0].ring if rows and ncols else None
        if ring is None:
            raise ValueError("cannot track an empty matrix without a ring")
        transform = [[ring.one() if i == j else ring.zero() for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for col in range(ncols):
        cand = [i for i in range(r, m) if not rows[i][col].is_zero()]
        if not cand:
            continue
        i = min(cand, key=lambda i: (rows[i][col].total_degree(), len(rows[i][col]), i))
        rows[r], rows[i] = rows[i], rows[r]
        if track:
            transform[r], transform[i] = transform[i], transform[r]
        piv = rows[r][col]
        for j in range(r + 1, m):
            a = rows[j][col]
            if a.is_zero():
                continue
            rows[j] = [red(piv * x - a * y) for x, y in zip(rows[j], rows[r])]
            if track:
                transform[j] = [red(piv * x - a * y) for x, y in zip(transform[j], transform[r])]
            budget.spend(ncols)
        pivots.append(col)
        r += 1
        if r == m:
            break
    return Echelon(r, rows, transform, pivots)


def rank(rows: Sequence[Sequence[MultiPoly]], ideal: Optional[IdealHandle], budget: Budget | None = None) -> int:
    if not rows or not rows[0]:
        return 0
    return echelon(rows, ideal, budget).rank


def left_kernel(rows, ideal, budget: Budget | None = None, ring=None) -> Matrix:
    if not rows:
        return []
    return echelon(rows, ideal, budget, track=True, ring=ring).kernel_rows()


def is_zero_mod(f: MultiPoly, ideal: Optional[IdealHandle], budget: Budget | None = None) -> bool:
    if f.is_zero():
        return True
    if ideal is None or ideal.is_zero():
        return False
    return normal_form(f, ideal, budget=ensure(budget)).is_zero()


# ---------------------------------------------------------------------------
# dense linear algebra over F_p


def solve_mod_p(A: List[List[int]], b: List[int], p: int) -> Optional[List[int]]:
    """One solution of A x = b over F_p, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if A else 0
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if M[i][c] % p), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n] % p:
            return None
    x = [0] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][n]
    return x


def rank_mod_p(A: List[List[int]], p: int) -> int:
    M = [[x % p for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if M else 0
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(r + 1, m):
            if M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
    return r
