"""Exact rank over Q (fraction-free elimination) and a modular cross-check."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None, labels: Sequence[str] = ()) -> RatMatrix:
        entries = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries, tuple(labels))

    def transpose(self) -> RatMatrix:
        if not self.rows:
            return RatMatrix(self.cols, 0, ((),) * self.cols)
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def integer_rows(self) -> list[list[int]]:
        """Each row scaled by its denominator lcm and divided by its content."""
        out = []
        for r in self.entries:
            den = lcm(*(v.denominator for v in r)) if r else 1
            ints = [int(v * den) for v in r]
            g = reduce(gcd, ints, 0)
            if g > 1:
                ints = [v // g for v in ints]
            out.append(ints)
        return out


def rank(m: RatMatrix | Sequence[Sequence]) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination.

    The pivot in each column is the entry of largest absolute value among
    the remaining rows; ties go to the lowest row index.
    """
    if not isinstance(m, RatMatrix):
        m = RatMatrix.from_rows(m)
    rows = [r for r in m.integer_rows() if any(r)]
    return _bareiss_rank(rows, m.cols)


def _bareiss_rank(rows: list[list[int]], ncols: int) -> int:
    n = len(rows)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == n:
            break
        piv, best = -1, 0
        for i in range(r, n):
            v = abs(rows[i][c])
            if v > best:
                piv, best = i, v
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        tail = range(c + 1, ncols)
        for i in range(r + 1, n):
            row = rows[i]
            a = row[c]
            if a:
                for j in tail:
                    row[j] = (p * row[j] - a * prow[j]) // prev
            elif prev == p:
                pass
            else:
                for j in tail:
                    if row[j]:
                        row[j] = p * row[j] // prev
            row[c] = 0
        prev = p
        r += 1
    return r


# ---------------------------------------------------------------------------
# modular arithmetic


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 2**30, hi: int = 2**31) -> int:
    while True:
        n = rng.randrange(lo, hi) | 1
        if is_prime(n):
            return n


class BadPrimeError(ArithmeticError):
    """A modulus divides a denominator of the matrix."""


def rank_mod_p(m: RatMatrix | Sequence[Sequence], p: int) -> int:
    """Rank over F_p of a rational matrix; raises if ``p`` divides a denominator."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix.from_rows(m)
    rows = []
    for r in m.entries:
        row = []
        for v in r:
            if v.denominator % p == 0:
                raise BadPrimeError(f"{p} divides a denominator")
            row.append(v.numerator * pow(v.denominator, -1, p) % p)
        if any(row):
            rows.append(row)
    return _rank_mod_p(rows, m.cols, p)


def _rank_mod_p(rows: list[list[int]], ncols: int, p: int) -> int:
    n = len(rows)
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c]), -1)
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], -1, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(r + 1, n):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c, ncols):
                    row[j] = (row[j] - a * prow[j]) % p
        r += 1
    return r


@dataclass(frozen=True)
class ModularRank:
    rank: int
    per_prime: tuple[tuple[int, int], ...]

    @property
    def consistent(self) -> bool:
        return len({r for _, r in self.per_prime}) == 1


def modular_rank(m: RatMatrix | Sequence[Sequence], nprimes: int = 3, rng: random.Random | None = None) -> ModularRank:
    """Maximal rank over ``nprimes`` random primes in (2^30, 2^31).

    Primes dividing a denominator are redrawn.  Disagreement between primes
    shows up in ``per_prime``; it is reported, not resolved.
    """
    rng = rng or random.Random(0)
    results = []
    while len(results) < nprimes:
        p = random_prime(rng)
        try:
            results.append((p, rank_mod_p(m, p)))
        except BadPrimeError:
            continue
    return ModularRank(max(r for _, r in results), tuple(results))
