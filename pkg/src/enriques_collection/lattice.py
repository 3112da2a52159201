"""Pic Y of the blown-up rational elliptic surface and the glued classes on S.

Basis order is fixed: ``(H, E0, E1, ..., E9, B1, B2)`` where ``H`` is the
pull-back of a line.  The intersection form is ``diag(1, -1, ..., -1)``.

A class ``D`` with ``D.A1`` and ``D.A2`` both even lifts to the smoothed
surface; its half-pairings ``d1, d2`` determine the glued Euler
characteristic and intersection numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

BASIS = ("H", "E0", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "B1", "B2")
RANK = len(BASIS)
FORM = (1,) + (-1,) * (RANK - 1)


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != RANK:
            raise ValueError(f"a divisor class needs {RANK} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, **coeffs: int) -> DivisorClass:
        """``DivisorClass.of(H=2, E0=-3, B1=-2)``."""
        v = [0] * RANK
        for name, c in coeffs.items():
            v[BASIS.index(name)] = c
        return cls(tuple(v))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __getitem__(self, name: str) -> int:
        return self.coords[BASIS.index(name)]

    @property
    def degree(self) -> int:
        return self.coords[0]

    def __str__(self) -> str:
        return format_class(self)


def format_class(d: DivisorClass) -> str:
    parts = []
    c = d.coords
    es = c[2:11]

    def term(k, name):
        if k == 0:
            return
        if k == 1:
            parts.append(f"+{name}")
        elif k == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{k:+d}{name}")

    term(c[0], "H")
    if len(set(es)) == 1 and es[0] != 0:
        term(es[0], "(E1+..+E9)")
    elif len(set(es[:8])) == 1 and es[0] != 0:
        term(es[0], "(E1+..+E8)")
        term(es[8], "E9")
    else:
        for k, e in enumerate(es, start=1):
            term(e, f"E{k}")
    term(c[1], "E0")
    term(c[11], "B1")
    term(c[12], "B2")
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def basis_vector(name: str) -> DivisorClass:
    return DivisorClass.of(**{name: 1})


ZERO = DivisorClass((0,) * RANK)
H = basis_vector("H")
E0 = basis_vector("E0")
B1 = basis_vector("B1")
B2 = basis_vector("B2")


def E(k: int) -> DivisorClass:
    if not 0 <= k <= 9:
        raise ValueError("E_k exists for k = 0..9")
    return basis_vector(f"E{k}")


SUM_E = sum((E(k) for k in range(1, 10)), ZERO)
# proper transforms of the two nodal cubics: through the nine base points, double at their own node
A1 = 3 * H - SUM_E - 2 * B1
A2 = 3 * H - SUM_E - 2 * B2
K_Y = -3 * H + E0 + SUM_E + B1 + B2
Q = 2 * H
FIBER = 3 * H - SUM_E
TORSION = B1 - B2


def ell(i: int) -> DivisorClass:
    if not 1 <= i <= 9:
        raise ValueError("l_i exists for i = 1..9")
    return H - E(i)


def D(i: int) -> DivisorClass:
    """The i-th member of the 13-term collection, as a class on Y."""
    if i == 0:
        return ZERO
    if 1 <= i <= 9:
        return -ell(i) + E0 + B1
    if i == 10:
        return -B1 + E0
    if i == 11:
        return -Q + 3 * E0 + 2 * B1
    if i == 12:
        return 2 * D(11)
    raise ValueError("D_i exists for i = 0..12")


COLLECTION = tuple(D(i) for i in range(13))


def pairing(c1: DivisorClass, c2: DivisorClass) -> int:
    return sum(f * a * b for f, a, b in zip(FORM, c1.coords, c2.coords))


def chi_on_Y(d: DivisorClass) -> int:
    """Riemann-Roch on Y: ``1 + (D^2 - D.K_Y)/2``."""
    twice = pairing(d, d) - pairing(d, K_Y)
    assert twice % 2 == 0, "D^2 - D.K is always even"
    return 1 + twice // 2


# ---------------------------------------------------------------------------
# glued classes


class NotGlueableError(ValueError):
    """The class has odd pairing with A1 or A2 and does not lift to Pic S."""


@dataclass(frozen=True)
class GluedClass:
    rep: DivisorClass
    d1: int
    d2: int

    def __post_init__(self):
        if 2 * self.d1 != pairing(self.rep, A1) or 2 * self.d2 != pairing(self.rep, A2):
            raise ValueError("d1, d2 must be half the pairings with A1, A2")

    def __add__(self, other: GluedClass) -> GluedClass:
        return glue(self.rep + other.rep)

    def __sub__(self, other: GluedClass) -> GluedClass:
        return glue(self.rep - other.rep)

    def __neg__(self) -> GluedClass:
        return glue(-self.rep)

    def __mul__(self, k: int) -> GluedClass:
        return glue(k * self.rep)

    __rmul__ = __mul__


def glue(d: DivisorClass) -> GluedClass:
    p1, p2 = pairing(d, A1), pairing(d, A2)
    if p1 % 2 or p2 % 2:
        raise NotGlueableError(f"{format_class(d)} has pairings ({p1}, {p2}) with (A1, A2); both must be even")
    return GluedClass(d, p1 // 2, p2 // 2)


def is_glueable(d: DivisorClass) -> bool:
    return pairing(d, A1) % 2 == 0 and pairing(d, A2) % 2 == 0


def chi_glued(g: GluedClass) -> int:
    """Euler characteristic of the glued bundle on the central fibre (= on S)."""
    return chi_on_Y(g.rep) + g.d1 * (g.d1 - 1) // 2 + g.d2 * (g.d2 - 1) // 2


def glued_square(g: GluedClass) -> int:
    return pairing(g.rep, E0) + 2 * chi_on_Y(g.rep) + g.d1 * (g.d1 - 1) + g.d2 * (g.d2 - 1) - 2


def linear_defect(g: GluedClass) -> int:
    """``D.E0 - D.K_Y - d1 - d2``; identically zero on glueable classes."""
    return pairing(g.rep, E0) - pairing(g.rep, K_Y) - g.d1 - g.d2


def glued_pair(g1: GluedClass, g2: GluedClass) -> int:
    """Symmetric bilinear form on glued classes (polarisation of ``glued_square``)."""
    value = pairing(g1.rep, g2.rep) + g1.d1 * g2.d1 + g1.d2 * g2.d2
    if g1 == g2:
        assert value + linear_defect(g1) == glued_square(g1)
    return value


def glued_K_pairing(g: GluedClass) -> int:
    """``D^g . K_S``, which equals ``D . E0`` since K_S is numerically E0^g."""
    return pairing(g.rep, E0)


def chi_glued_difference(i: int, j: int) -> int:
    """Euler characteristic of ``-D_i^g + D_j^g``."""
    if i == j:
        raise ValueError("need i != j")
    return chi_glued(glue(-D(i) + D(j)))


def gram_matrix() -> list[list[int]]:
    gs = [glue(D(i)) for i in range(1, 12)]
    return [[glued_pair(a, b) for b in gs] for a in gs]


def ks_relation_holds() -> bool:
    """Whether ``D_1 + ... + D_10 - 3 D_11`` pairs like ``E0`` with every glued class.

    Probed on ``2 * e_k`` for the 13 basis vectors, which are glueable and
    span Pic Y over Q.
    """
    lhs = glue(sum((D(i) for i in range(1, 11)), ZERO) - 3 * D(11))
    rhs = glue(E0)
    probes = [glue(2 * basis_vector(name)) for name in BASIS]
    return all(glued_pair(lhs, p) == glued_pair(rhs, p) for p in probes)


def gram_and_KS_check() -> tuple[list[list[int]], bool]:
    return gram_matrix(), ks_relation_holds()


def intersection_table(i: int = 1, j: int = 2) -> tuple[list[str], list[list[int]]]:
    """Glued pairings among ``Q, l_i, l_j, B1, E0`` (with ``i != j``)."""
    names = ["Q", f"l{i}", f"l{j}", "B1", "E0"]
    classes = [glue(c) for c in (Q, ell(i), ell(j), B1, E0)]
    return names, [[glued_pair(a, b) for b in classes] for a in classes]


# ---------------------------------------------------------------------------
# representatives


class NoCongruenceError(ValueError):
    """The representative is not congruent to the target modulo A1, A2, B1-B2."""


@dataclass(frozen=True)
class CongruenceWitness:
    """``rep - target = a*A1 + b*A2 + t*(B1 - B2)`` with ``t`` in {0, 1}.

    ``A1 - A2 = -2(B1 - B2)``, so ``t`` is only defined mod 2; ``t = 1`` is a
    torsion twist on S.
    """

    a: int
    b: int
    t: int

    @property
    def torsion_twist(self) -> bool:
        return self.t != 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.t)


def congruence_check(rep: DivisorClass, target: DivisorClass) -> CongruenceWitness:
    diff = rep - target
    h, e0 = diff["H"], diff["E0"]
    es = diff.coords[2:11]
    b1, b2 = diff["B1"], diff["B2"]
    problems = []
    if e0:
        problems.append(f"E0 coefficient {e0} != 0")
    if len(set(es)) != 1:
        problems.append(f"E1..E9 coefficients {list(es)} not uniform")
    s = -es[0]
    if h != 3 * s:
        problems.append(f"H coefficient {h} != 3*{s}")
    if b1 + b2 != -2 * s:
        problems.append(f"B1 + B2 coefficient {b1 + b2} != {-2 * s}")
    if problems:
        raise NoCongruenceError(
            f"{format_class(rep)} is not congruent to {format_class(target)}: " + "; ".join(problems))
    t = b1 % 2
    a, b = (t - b1) // 2, (-t - b2) // 2
    assert a * A1 + b * A2 + t * TORSION == diff
    return CongruenceWitness(a, b, t)


def reduced_representative(target: DivisorClass) -> DivisorClass:
    """Add multiples of A1, A2 so that both half-pairings land in {0, 1}.

    Each ``A_i`` shifts ``d_i`` by -2 and leaves the other unchanged; with
    ``d_i`` in {0, 1} the plane twists contribute nothing to the h^0 bound.
    """
    g = glue(target)
    return target + (g.d1 // 2) * A1 + (g.d2 // 2) * A2


def parse_class(values: Iterable) -> DivisorClass:
    vals = [int(v) for v in values]
    return DivisorClass(tuple(vals))


def fig1_incidences() -> dict[str, int]:
    """The intersection numbers encoded by the dual graph of A_i, B_i, E_k."""
    out = {
        "A1.A1": pairing(A1, A1), "A2.A2": pairing(A2, A2),
        "B1.B1": pairing(B1, B1), "B2.B2": pairing(B2, B2),
        "A1.B1": pairing(A1, B1), "A2.B2": pairing(A2, B2),
        "A1.B2": pairing(A1, B2), "A2.B1": pairing(A2, B1),
        "A1.A2": pairing(A1, A2),
        "A1.E0": pairing(A1, E0), "A2.E0": pairing(A2, E0),
    }
    for k in range(1, 10):
        out[f"A1.E{k}"] = pairing(A1, E(k))
        out[f"A2.E{k}"] = pairing(A2, E(k))
    return out

