"""Dimensions of plane linear systems with fat points.

A divisor ``dH - sum m_P E_P`` on the blow-up has as many sections as there
are degree-``d`` plane curves with multiplicity at least ``m_P`` at each
``P``.  Each multiplicity condition contributes the vanishing of all Hasse
derivatives of order below ``m_P`` at ``P``; for the degree-8 block the
conditions are taken coefficient-wise in ``Q[t]/(f)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .lattice import DivisorClass
from .linalg import ModularRank, RatMatrix, modular_rank, rank
from .pencil import ConjugateOrbit, PointConfig, ProjPointQ
from .polynomials import UniPoly


def num_monomials(d: int) -> int:
    return comb(d + 2, 2) if d >= 0 else 0


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[tuple[int, int, int], ...]:
    """Exponents of degree-``d`` monomials in graded lex order, x > y > z."""
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


def derivative_orders(m: int) -> list[tuple[int, int]]:
    return [(k - j, j) for k in range(m) for j in range(k + 1)]


class NonUniformOrbitError(ValueError):
    """E1..E8 carry different coefficients; reduce by symmetry first."""


@dataclass(frozen=True)
class FatPointSystem:
    degree: int
    rational_conditions: tuple[tuple[ProjPointQ, int], ...] = ()
    orbit_conditions: tuple[ConjugateOrbit, int] | None = None
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if any(m < 1 for _, m in self.rational_conditions):
            raise ValueError("multiplicities must be >= 1")
        if self.orbit_conditions is not None and self.orbit_conditions[1] < 1:
            raise ValueError("orbit multiplicity must be >= 1")

    @classmethod
    def empty(cls) -> FatPointSystem:
        """Marker for a negative-degree class: no sections."""
        return cls(-1)

    @property
    def is_empty(self) -> bool:
        return self.degree < 0

    @property
    def condition_count(self) -> int:
        n = sum(comb(m + 1, 2) for _, m in self.rational_conditions)
        if self.orbit_conditions is not None:
            orb, m = self.orbit_conditions
            n += orb.degree * comb(m + 1, 2)
        return n

    @property
    def expected_dimension(self) -> int:
        return max(num_monomials(self.degree) - self.condition_count, 0)


def divisor_to_system(d: DivisorClass, cfg: PointConfig) -> FatPointSystem:
    """Plane system whose dimension is ``h^0(d)``.

    Positive exceptional coefficients are fixed components and impose nothing.
    """
    deg = d["H"]
    orbit_coeffs = d.coords[2:10]
    if len(set(orbit_coeffs)) != 1:
        raise NonUniformOrbitError(f"E1..E8 coefficients {list(orbit_coeffs)} are not uniform")
    if deg < 0:
        return FatPointSystem.empty()
    conds, labels = [], []
    for name, pt in (("E9", cfg.e9), ("E0", cfg.e0), ("B1", cfg.node1), ("B2", cfg.node2)):
        m = -d[name]
        if m > 0:
            conds.append((pt, m))
            labels.append(name)
    orbit = None
    if orbit_coeffs[0] < 0:
        orbit = (cfg.orbit, -orbit_coeffs[0])
        labels.append("E1..E8")
    return FatPointSystem(deg, tuple(conds), orbit, tuple(labels))


def condition_rows_rational(p: ProjPointQ, m: int, d: int, chart: int | None = None) -> list[list[Fraction]]:
    """Rows for multiplicity ``m`` at a rational point, in its canonical chart by default."""
    chart = p.chart if chart is None else chart
    u0, v0 = p.affine(chart)
    rows = []
    for i, j in derivative_orders(m):
        row = []
        for e in monomials(d):
            eu, ev = (e[k] for k in range(3) if k != chart)
            if eu < i or ev < j:
                row.append(Fraction(0))
            else:
                row.append(comb(eu, i) * comb(ev, j) * u0 ** (eu - i) * v0 ** (ev - j))
        rows.append(row)
    return rows


def condition_rows_orbit(orb: ConjugateOrbit, m: int, d: int) -> list[list[Fraction]]:
    """``deg f`` rows per derivative order: the t-coefficients of the Hasse
    derivative evaluated at ``(xi(t), eta(t))`` modulo ``f``."""
    f = orb.minpoly
    n = f.degree
    xp = _powers_mod(orb.xi, d, f)
    yp = _powers_mod(orb.eta, d, f)
    products: dict[tuple[int, int], UniPoly] = {}

    def prod(a: int, b: int) -> UniPoly:
        key = (a, b)
        if key not in products:
            products[key] = (xp[a] * yp[b]) % f
        return products[key]

    rows = []
    for i, j in derivative_orders(m):
        cols = []
        for a, b, _ in monomials(d):
            if a < i or b < j:
                cols.append(())
            else:
                c = comb(a, i) * comb(b, j)
                cols.append(tuple(c * v for v in prod(a - i, b - j).coeffs))
        for k in range(n):
            rows.append([col[k] if k < len(col) else Fraction(0) for col in cols])
    return rows


def _powers_mod(g: UniPoly, d: int, f: UniPoly) -> list[UniPoly]:
    out = [UniPoly([1]) % f if f.degree > 0 else UniPoly([1])]
    g = g % f
    for _ in range(d):
        out.append((out[-1] * g) % f)
    return out


@dataclass(frozen=True)
class ConditionMatrix:
    matrix: RatMatrix
    labels: tuple[str, ...]


def condition_matrix(sys: FatPointSystem) -> ConditionMatrix:
    d = sys.degree
    rows, labels = [], []
    names = list(sys.labels) or [f"P{k}" for k in range(len(sys.rational_conditions))]
    for k, (p, m) in enumerate(sys.rational_conditions):
        block = condition_rows_rational(p, m, d)
        rows += block
        name = names[k] if k < len(names) else f"P{k}"
        labels += [f"{name}:{p}:m{m}:{i}"[:64] for i in range(len(block))]
    if sys.orbit_conditions is not None:
        orb, m = sys.orbit_conditions
        block = condition_rows_orbit(orb, m, d)
        rows += block
        labels += [f"orbit:m{m}:{i}" for i in range(len(block))]
    mat = RatMatrix.from_rows(rows, cols=num_monomials(d), labels=labels)
    assert mat.rows == sys.condition_count
    return ConditionMatrix(mat, tuple(labels))


def h0(sys: FatPointSystem) -> int:
    """Dimension of the space of degree-d forms satisfying the conditions."""
    if sys.is_empty:
        return 0
    n = num_monomials(sys.degree)
    if sys.condition_count == 0:
        return n
    return n - rank(condition_matrix(sys).matrix)


def h0_modular(sys: FatPointSystem, nprimes: int = 3, seed: int = 0) -> tuple[int, ModularRank | None]:
    if sys.is_empty:
        return 0, None
    n = num_monomials(sys.degree)
    if sys.condition_count == 0:
        return n, None
    mr = modular_rank(condition_matrix(sys).matrix, nprimes, random.Random(seed))
    return n - mr.rank, mr


def h0_modular_oracle(sys: FatPointSystem, nprimes: int = 3, seed: int = 0) -> int:
    """``h0`` via ranks modulo random primes above 2^30 (maximal modular rank)."""
    return h0_modular(sys, nprimes, seed)[0]


def colinear(p1: ProjPointQ, p2: ProjPointQ, p3: ProjPointQ) -> bool:
    if p1 == p2 or p1 == p3 or p2 == p3:
        raise ValueError("colinearity needs three distinct points")
    return det3(p1, p2, p3) == 0


def det3(p1: ProjPointQ, p2: ProjPointQ, p3: ProjPointQ) -> Fraction:
    """Determinant of the primitive integer coordinates (rows p1, p2, p3)."""
    (a, b, c), (d, e, f), (g, h, i) = (p.integer_coords() for p in (p1, p2, p3))
    return Fraction(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
