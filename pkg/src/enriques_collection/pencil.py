"""Geometry of the cubic pencil: nodes, base points and the degree-8 block.

All computations are exact.  A point configuration consists of the rational
base point ``e9``, the extra blown-up point ``e0``, the two nodes and the
remaining eight base points, which are encoded as a squarefree polynomial
``f(t)`` together with coordinates ``(xi(t), eta(t), 1)`` modulo ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polynomials import (
    MultiPoly,
    UniPoly,
    ZeroDivisorError,
    irreducibility_certificate,
    mod_inverse,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
    subresultant_prs,
)

XYZ = ("x", "y", "z")
SMALL_PRIMES = tuple(p for p in range(3, 400) if all(p % d for d in range(2, int(p**0.5) + 1)))


class ConfigurationError(ValueError):
    """Rejected plane data; ``code`` names the failed check."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class PositiveDimensionalError(ConfigurationError):
    def __init__(self, message: str):
        super().__init__("positive-dimensional", message)


# ---------------------------------------------------------------------------
# points and cubics


@dataclass(frozen=True)
class ProjPointQ:
    """Rational point of P^2, normalised so the first nonzero coordinate is 1."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, coords: Sequence):
        cs = [Fraction(c) for c in coords]
        if len(cs) != 3 or not any(cs):
            raise ValueError(f"not a projective point: {coords}")
        lead = next(c for c in cs if c)
        object.__setattr__(self, "coords", tuple(c / lead for c in cs))

    @property
    def chart(self) -> int:
        """Index of the first nonzero coordinate (the canonical chart)."""
        return next(k for k, c in enumerate(self.coords) if c)

    def affine(self, chart: int | None = None) -> tuple[Fraction, Fraction]:
        chart = self.chart if chart is None else chart
        c = self.coords[chart]
        if not c:
            raise ValueError(f"{self} is not in chart {XYZ[chart]}=1")
        return tuple(self.coords[k] / c for k in range(3) if k != chart)

    def integer_coords(self) -> list[int]:
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.coords))
        ints = [int(c * den) for c in self.coords]
        g = gcd(*ints)
        return [v // g for v in ints]

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.integer_coords()) + "]"


def point(*coords) -> ProjPointQ:
    return ProjPointQ(coords)


@dataclass(frozen=True)
class Cubic:
    form: MultiPoly

    def __post_init__(self):
        if self.form.variables != XYZ:
            raise ValueError(f"cubic must be a form in {XYZ}")
        if self.form.is_zero():
            raise ConfigurationError("zero-cubic", "the zero polynomial is not a cubic")
        if not self.form.is_homogeneous() or self.form.total_degree() != 3:
            raise ConfigurationError("not-a-cubic", f"{self.form} is not homogeneous of degree 3")

    @classmethod
    def from_list(cls, data) -> Cubic:
        return cls(MultiPoly.from_list(XYZ, data))

    def __call__(self, p: ProjPointQ) -> Fraction:
        return self.form(*p.coords)

    def gradient(self) -> list[MultiPoly]:
        return [self.form.partial(v) for v in XYZ]

    def dehomogenize(self, chart: int) -> MultiPoly:
        return self.form.substitute({XYZ[chart]: 1})

    def __str__(self) -> str:
        return str(self.form)


def _on_curve_singular(c: Cubic, p: ProjPointQ) -> bool:
    return all(not g(*p.coords) for g in c.gradient())


# ---------------------------------------------------------------------------
# solving small polynomial systems over Q


def _common_rational_roots_univariate(polys: Sequence[UniPoly]) -> list[Fraction] | None:
    """Rational common roots; None if every polynomial vanishes identically."""
    nonzero = [p for p in polys if p]
    if not nonzero:
        return None
    g = nonzero[0]
    for p in nonzero[1:]:
        g = poly_gcd(g, p)
    g = g.monic()
    if g.degree < 1:
        return []
    return rational_roots(g)


def _affine_common_zeros(polys: Sequence[MultiPoly]) -> list[tuple[Fraction, Fraction]]:
    """Rational common zeros of bivariate polynomials in ('u', 'v') order of their variables."""
    u, v = polys[0].variables
    nonzero = [p for p in polys if p]
    if not nonzero:
        raise PositiveDimensionalError("all equations vanish identically")
    if any(p.is_constant() for p in nonzero):
        return []
    candidates: list[Fraction] | None = None
    for p in nonzero:
        if p.degree(u) == 0:
            candidates = rational_roots(UniPoly.from_multipoly(p.substitute({u: 0})))
            break
    if candidates is None:
        for i in range(len(nonzero)):
            for j in range(i + 1, len(nonzero)):
                r = resultant(nonzero[i], nonzero[j], u)
                if r:
                    candidates = [] if r.is_constant() else rational_roots(UniPoly.from_multipoly(r))
                    break
            if candidates is not None:
                break
    if candidates is None:
        raise PositiveDimensionalError("equations share a common component")
    zeros = []
    for v0 in candidates:
        fibre = [UniPoly.from_multipoly(p.substitute({v: v0})) for p in nonzero]
        us = _common_rational_roots_univariate(fibre)
        if us is None:
            raise PositiveDimensionalError(f"common zeros along the line {v} = {v0}")
        zeros.extend((u0, v0) for u0 in us)
    return zeros


def _projective_common_zeros(forms: Sequence[MultiPoly]) -> list[ProjPointQ]:
    """Rational common zeros in P^2 of homogeneous forms in x, y, z."""
    pts = []
    affine = [f.substitute({"z": 1}) for f in forms]
    for x0, y0 in _affine_common_zeros(affine):
        pts.append(point(x0, y0, 1))
    at_infinity = [UniPoly.from_multipoly(f.substitute({"y": 1, "z": 0})) for f in forms]
    xs = _common_rational_roots_univariate(at_infinity)
    if xs is None:
        raise PositiveDimensionalError("the line z = 0 is contained in the zero set")
    pts.extend(point(x0, 1, 0) for x0 in xs)
    if all(not f(1, 0, 0) for f in forms):
        pts.append(point(1, 0, 0))
    return pts


# ---------------------------------------------------------------------------
# singular points


def singular_locus(c: Cubic) -> list[ProjPointQ]:
    """Rational singular points of the cubic curve."""
    grads = c.gradient()
    pts = _projective_common_zeros(grads)
    for p in pts:
        assert not c(p), "Euler's relation: singular points lie on the curve"
    return pts


class NotSingularError(ValueError):
    pass


def hessian_det(c: Cubic, p: ProjPointQ, chart: int | None = None) -> Fraction:
    chart = p.chart if chart is None else chart
    g = c.dehomogenize(chart)
    u, v = g.variables
    a = p.affine(chart)
    huu = g.partial(u, 2)(*a)
    hvv = g.partial(v, 2)(*a)
    huv = g.partial(u).partial(v)(*a)
    return huu * hvv - huv * huv


def is_node(c: Cubic, p: ProjPointQ, chart: int | None = None) -> bool:
    """Whether the singular point ``p`` is an ordinary double point."""
    if c(p) or not _on_curve_singular(c, p):
        raise NotSingularError(f"{p} is not a singular point of {c}")
    return hessian_det(c, p, chart) != 0


# ---------------------------------------------------------------------------
# base locus and the shape representation


@dataclass(frozen=True)
class ConjugateOrbit:
    """Points ``(xi(t), eta(t), 1)`` for the roots ``t`` of a squarefree ``f``.

    ``f`` need not be irreducible; the block is stable under Galois action
    either way, and conditions on it are extracted over Q.
    """

    minpoly: UniPoly
    xi: UniPoly
    eta: UniPoly
    chart: int = 2
    shear: int = 0
    irreducible_mod: int | None = field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def lies_on(self, c: Cubic) -> bool:
        f = self.minpoly
        acc = UniPoly()
        for (a, b, _), coeff in c.form.terms.items():
            acc = acc + coeff * (_powmod(self.xi, a, f) * _powmod(self.eta, b, f))
        return not (acc % f)

    def rational_members(self) -> list[ProjPointQ]:
        return [point(self.xi(t), self.eta(t), 1) for t in rational_roots(self.minpoly)]


def _powmod(g: UniPoly, k: int, f: UniPoly) -> UniPoly:
    result, base = UniPoly([1]), g % f
    while k:
        if k & 1:
            result = (result * base) % f
        base = (base * base) % f
        k >>= 1
    return result


@dataclass(frozen=True)
class BaseLocus:
    rational: tuple[ProjPointQ, ...]
    blocks: tuple[UniPoly, ...]
    eliminant: UniPoly
    at_infinity: tuple[ProjPointQ, ...]

    @property
    def count(self) -> int:
        return len(self.rational) + sum(b.degree for b in self.blocks)


def _check_coprime(h1: Cubic, h2: Cubic) -> MultiPoly:
    a, b = h1.dehomogenize(2), h2.dehomogenize(2)
    if a.degree("x") < 1 or b.degree("x") < 1:
        raise ConfigurationError("degenerate-chart", "both cubics must involve x in the chart z=1")
    r = resultant(a, b, "x")
    if r.is_zero():
        raise ConfigurationError("common-component", "the cubics share a common component")
    return r


def base_locus(h1: Cubic, h2: Cubic) -> BaseLocus:
    """Rational base points and the remaining blocks of the pencil."""
    r = _check_coprime(h1, h2)
    if not (h1.form.terms.get((3, 0, 0)) or h2.form.terms.get((3, 0, 0))):
        raise ConfigurationError("degenerate-chart", "neither cubic contains x^3; [1,0,0] is a base point")
    forms = [h1.form.substitute({"z": 0}), h2.form.substitute({"z": 0})]
    inf = [UniPoly.from_multipoly(f.substitute({"y": 1})) for f in forms]
    nz = [p for p in inf if p]
    if not nz:
        raise ConfigurationError("common-component", "both cubics contain the line z = 0")
    g = nz[0]
    for p in nz[1:]:
        g = poly_gcd(g, p)
    if g.degree >= 1 and squarefree_part(g).degree != g.degree:
        raise ConfigurationError("non-reduced", "a base point at infinity is not a simple intersection")
    xs = rational_roots(g) if g.degree >= 1 else []
    if len(xs) != max(g.degree, 0):
        raise ConfigurationError("irrational-infinity", "base points on z = 0 must be rational")
    at_inf = [point(x0, 1, 0) for x0 in xs]
    eliminant = UniPoly.from_multipoly(r)
    sqf = squarefree_part(eliminant)
    if sqf.degree != eliminant.degree:
        raise ConfigurationError(
            "not-distinct", "the affine eliminant is not squarefree (tangency or shared y-coordinates)")
    affine_rational = []
    rest = sqf
    for y0 in rational_roots(sqf):
        fibre = [UniPoly.from_multipoly(h.dehomogenize(2).substitute({"y": y0})) for h in (h1, h2)]
        xs0 = _common_rational_roots_univariate(fibre) or []
        if len(xs0) != 1:
            raise ConfigurationError("not-distinct", f"base points over y = {y0} are not a single rational point")
        affine_rational.append(point(xs0[0], y0, 1))
        rest = rest // UniPoly([-y0, 1])
    blocks = (rest.primitive(),) if rest.degree > 0 else ()
    locus = BaseLocus(tuple(at_inf) + tuple(affine_rational), blocks, eliminant.primitive(), tuple(at_inf))
    if locus.count != 9:
        raise ConfigurationError("base-count", f"expected 9 distinct base points, found {locus.count}")
    return locus


class ShapeError(ConfigurationError):
    def __init__(self, message: str):
        super().__init__("shape", message)


def shape_representation(h1: Cubic, h2: Cubic, rational_pts: Sequence[ProjPointQ] = (),
                         shear: int | None = None, max_shears: int = 6) -> ConjugateOrbit:
    """Encode the base points in the chart z=1 as ``(f, xi, eta)``.

    ``rational_pts`` are the base points excluded from the block; they must lie
    on z = 0.  With ``t = y + shear*x`` as separating coordinate, ``x`` is read
    off the degree-1 subresultant and ``eta = t - shear*xi``.
    """
    for p in rational_pts:
        if p.coords[2]:
            raise ShapeError(f"excluded point {p} must lie on z = 0")
    expected = 9 - len(rational_pts)
    if shear is None:
        shears = [0]
        for k in range(1, max_shears + 1):
            shears += [k, -k]
    else:
        shears = [shear]
    x, t = "x", "t"
    V = (x, t)
    X = MultiPoly.variable(V, x)
    T = MultiPoly.variable(V, t)
    one = MultiPoly.constant(V, 1)
    failures = []
    for lam in shears:
        images = {"x": X, "y": T - lam * X, "z": one}
        a, b = h1.form.compose(images), h2.form.compose(images)
        if a.degree(x) < 1 or b.degree(x) < 1:
            failures.append(f"shear {lam}: degenerate in x")
            continue
        lcs = [p.coefficients_in(x)[-1] for p in (a, b)]
        if not any(lc.is_constant() for lc in lcs):
            failures.append(f"shear {lam}: no constant leading coefficient in x")
            continue
        if a.degree(x) < b.degree(x):
            a, b = b, a
        r = UniPoly.from_multipoly(resultant(a, b, x))
        f = squarefree_part(r)
        if f.degree != r.degree:
            failures.append(f"shear {lam}: eliminant not squarefree")
            continue
        if f.degree != expected:
            raise ShapeError(f"residual base locus has degree {f.degree}, expected {expected}")
        prs = subresultant_prs(a, b, x)
        lin = next((s for s in prs if len(s) == 2), None)
        if lin is None:
            failures.append(f"shear {lam}: no degree-1 subresultant")
            continue
        c0, c1 = (UniPoly.from_multipoly(c) for c in lin)
        try:
            inv = mod_inverse(c1, f)
        except ZeroDivisorError:
            failures.append(f"shear {lam}: subresultant leading coefficient is a zero divisor")
            continue
        xi = (-(c0 * inv)) % f
        eta = (UniPoly([0, 1]) - lam * xi) % f
        orbit = ConjugateOrbit(f, xi, eta, 2, lam, irreducibility_certificate(f, SMALL_PRIMES))
        if not (orbit.lies_on(h1) and orbit.lies_on(h2)):
            raise ShapeError(f"shear {lam}: shape representation does not satisfy the cubics")
        return orbit
    raise ShapeError("no separating coordinate found (" + "; ".join(failures) + ")")


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class PointConfig:
    e9: ProjPointQ
    e0: ProjPointQ
    node1: ProjPointQ
    node2: ProjPointQ
    orbit: ConjugateOrbit
    cubics: tuple[Cubic, Cubic]
    node_assignment: str = "h1->B1"

    @property
    def rational_points(self) -> dict[str, ProjPointQ]:
        return {"E9": self.e9, "E0": self.e0, "B1": self.node1, "B2": self.node2}


NODE_ASSIGNMENTS = ("h1->B1", "h2->B1")


def unique_node(c: Cubic, label: str) -> ProjPointQ:
    sing = singular_locus(c)
    if len(sing) != 1:
        raise ConfigurationError("node-count", f"{label} has {len(sing)} rational singular points, expected 1")
    p = sing[0]
    if not is_node(c, p):
        raise ConfigurationError("not-a-node", f"the singular point {p} of {label} is not a node")
    return p


def build_config(h1: Cubic, h2: Cubic, e0: ProjPointQ, node_assignment: str = "h1->B1",
                 shear: int | None = None) -> PointConfig:
    if node_assignment not in NODE_ASSIGNMENTS:
        raise ConfigurationError("node-assignment", f"unknown node assignment {node_assignment!r}")
    n1 = unique_node(h1, "h1")
    n2 = unique_node(h2, "h2")
    if h2(n1) == 0 or h1(n2) == 0:
        raise ConfigurationError("node-on-other-cubic", "a node of one cubic lies on the other")
    locus = base_locus(h1, h2)
    if len(locus.at_infinity) != 1:
        raise ConfigurationError(
            "base-shape", f"expected exactly one base point on z = 0, found {len(locus.at_infinity)}")
    e9 = locus.at_infinity[0]
    for h, label in ((h1, "h1"), (h2, "h2")):
        if _on_curve_singular(h, e9):
            raise ConfigurationError("base-shape", f"{e9} is singular on {label}")
    orbit = shape_representation(h1, h2, [e9], shear=shear)
    marked = {"E9": e9, "node of h1": n1, "node of h2": n2}
    for name, p in marked.items():
        if p == e0:
            raise ConfigurationError("e0-coincides", f"e0 coincides with {name} {p}")
    if h1(e0) == 0:
        raise ConfigurationError("e0-on-cubic", f"e0 = {e0} lies on h1")
    if h2(e0) == 0:
        raise ConfigurationError("e0-on-cubic", f"e0 = {e0} lies on h2")
    if n1 == n2 or n1 == e9 or n2 == e9:
        raise ConfigurationError("coincident-points", "nodes and e9 must be distinct")
    node1, node2 = (n1, n2) if node_assignment == "h1->B1" else (n2, n1)
    return PointConfig(e9, e0, node1, node2, orbit, (h1, h2), node_assignment)


# the cubics and extra point used in the construction
REFERENCE_H1 = Cubic.from_list([[1, [0, 2, 1]], [-2, [0, 1, 2]], [1, [0, 0, 3]], [-1, [3, 0, 0]], [-1, [2, 0, 1]]])
REFERENCE_H2 = Cubic.from_list([[1, [3, 0, 0]], [-2, [1, 2, 0]], [2, [1, 1, 1]], [1, [0, 2, 1]]])
REFERENCE_E0 = point(4, 9, 6)


def reference_config() -> PointConfig:
    return build_config(REFERENCE_H1, REFERENCE_H2, REFERENCE_E0)


def translate(c: Cubic, a: int, b: int) -> Cubic:
    """The cubic ``c(x - a z, y - b z, z)``; moves an affine point (x, y) to (x + a, y + b)."""
    X, Y, Z = (MultiPoly.variable(XYZ, v) for v in XYZ)
    return Cubic(c.form.compose({"x": X - a * Z, "y": Y - b * Z, "z": Z}))
