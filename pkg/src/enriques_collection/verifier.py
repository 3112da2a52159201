"""Resolution of the 156 vanishing tasks and the certificate report.

Task ``(i, j, p)`` with ``j < i`` asks for ``h^p(-D_i + D_j) = 0`` on S.  For
``p = 2`` Serre duality turns it into ``h^0(K_S + D_i - D_j) = 0`` with ``K_S``
represented by ``E0 + t(B1 - B2)``, ``t = ks_torsion``.  Either way a class
``C`` on Y is certified to have no sections on S.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .interpolation import (FatPointSystem, colinear, det3, divisor_to_system, h0,
                            h0_modular)
from .lattice import (B1, D, E0, CongruenceWitness, DivisorClass, K_Y,
                      NoCongruenceError, E, H, B2, SUM_E, chi_glued_difference,
                      congruence_check, format_class, glue, glued_pair, parse_class,
                      reduced_representative)
from .pencil import PointConfig

PROVEN, BOUND_ONLY, FLAGGED = "Proven", "BoundOnly", "Flagged"
NEF, CHI, DEGREE, SEMI, SYMMETRY = (
    "NefCriterion", "ChiZero", "DegreeBoundOnY", "SemicontinuityBound", "SymmetryReduced")
METHOD_ORDER = (CHI, NEF, DEGREE, SYMMETRY, SEMI)

ASSUME_NEF = "B1g-nef"
ASSUME_PERTURB = "perturbation-generic"
ASSUME_GENERIC = "generic-h: base points conjugate"
ASSUME_SERRE = "serre: K_S = E0 + t(B1-B2)"
ASSUME_EXCEPTIONAL = "single bundles exceptional: h1(O_S) = h2(O_S) = 0"

@dataclass(frozen=True, order=True)
class VanishingTask:
    i: int
    j: int
    p: int

    def __post_init__(self):
        if not 0 <= self.j < self.i <= 12:
            raise ValueError(f"need 0 <= j < i <= 12, got ({self.i}, {self.j})")
        if self.p not in (0, 2):
            raise ValueError("cohomology degree must be 0 or 2")

    @property
    def key(self) -> str:
        return f"h{self.p}_{self.i}_{self.j}"

    @classmethod
    def parse(cls, key: str) -> VanishingTask:
        head, i, j = key.split("_")
        if head not in ("h0", "h2"):
            raise ValueError(f"bad task key {key!r}")
        return cls(int(i), int(j), int(head[1]))


def required_tasks() -> list[VanishingTask]:
    return [VanishingTask(i, j, p) for i in range(13) for j in range(i) for p in (0, 2)]


def canonical_class(ks_torsion: int = 1) -> DivisorClass:
    return E0 + ks_torsion * (B1 - B2)


def target_class(task: VanishingTask, ks_torsion: int = 1) -> DivisorClass:
    """The class whose h^0 on S must vanish."""
    if task.p == 0:
        return -D(task.i) + D(task.j)
    return canonical_class(ks_torsion) + D(task.i) - D(task.j)


@dataclass(frozen=True)
class Verdict:
    status: str
    value: int = 0
    reason: str = ""

    def to_json(self) -> dict:
        return {"status": self.status, "value": self.value, "reason": self.reason}


@dataclass(frozen=True)
class CertificateEntry:
    task: VanishingTask
    method: str
    verdict: Verdict
    bound: int = 0
    representative: DivisorClass | None = None
    congruence: CongruenceWitness | None = None
    reduced_to: VanishingTask | None = None
    twists: tuple[int, int] | None = None
    h0_on_Y: int | None = None
    pairing_with_B1: int | None = None
    assumptions: tuple[str, ...] = ()
    oracle: dict | None = None

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bounds are never negative")
        if self.verdict.status == PROVEN and self.bound != 0 and self.method not in (NEF, CHI, DEGREE):
            raise ValueError("Proven needs bound 0")

    def to_json(self) -> dict:
        rep = self.representative
        return {
            "task": self.task.key,
            "i": self.task.i,
            "j": self.task.j,
            "p": self.task.p,
            "method": self.method,
            "reduced_to": self.reduced_to.key if self.reduced_to else None,
            "representative": format_class(rep) if rep is not None else None,
            "representative_coords": list(rep.coords) if rep is not None else None,
            "congruence": list(self.congruence.as_tuple()) if self.congruence else None,
            "twists": list(self.twists) if self.twists else None,
            "pairing_with_B1": self.pairing_with_B1,
            "h0_on_Y": self.h0_on_Y,
            "bound": self.bound,
            "verdict": self.verdict.to_json(),
            "assumptions": list(self.assumptions),
            "oracle": self.oracle,
        }


# ---------------------------------------------------------------------------
# representative table


def _orbit_sum(k: int, skip9: bool = False) -> DivisorClass:
    s = SUM_E - E(9) if skip9 else SUM_E
    return k * s


# rows as listed; rows whose listed class fails the congruence carry a corrected form
LISTED_TABLE: dict[str, DivisorClass] = {
    "h0_9_0": H - E(9) - E0 - B1,
    "h2_10_9": H - E(9) + E0 - B1 - B2,
    "h0_11_0": 5 * H - _orbit_sum(1) - 3 * E0 - 2 * B1 - 2 * B2,
    "h0_11_9": 4 * H - _orbit_sum(1, True) - 2 * E0 - B1 - 2 * B2,
    "h0_11_10": 5 * H - _orbit_sum(1) - 2 * E0 - 3 * B1 - 2 * B2,
    "h0_12_0": 16 * H - _orbit_sum(4) - 6 * E0 - 6 * B1 - 6 * B2,
    "h0_12_9": 12 * H - _orbit_sum(3, True) - 2 * E(9) - 5 * E0 - 6 * B1 - 4 * B2,
    "h0_12_10": 10 * H - _orbit_sum(3) - 5 * E0 - 5 * B1 - 6 * B2,
    "h0_12_11": 5 * H - _orbit_sum(1) - 3 * E0 - 2 * B1 - 2 * B2,
}
CORRECTED_TABLE: dict[str, DivisorClass] = {
    "h0_12_9": 12 * H - _orbit_sum(3, True) - 2 * E(9) - 5 * E0 - 5 * B1 - 4 * B2,
    "h0_12_10": 13 * H - _orbit_sum(3) - 5 * E0 - 5 * B1 - 6 * B2,
}


class NotInTableError(KeyError):
    pass


@dataclass(frozen=True)
class RepresentativeAudit:
    task: VanishingTask
    listed: DivisorClass
    listed_witness: CongruenceWitness | None
    listed_error: str
    corrected: DivisorClass | None = None
    corrected_witness: CongruenceWitness | None = None
    source: str = "listed"

    @property
    def flagged(self) -> bool:
        return self.listed_witness is None

    @property
    def chosen(self) -> tuple[DivisorClass, CongruenceWitness] | None:
        if self.listed_witness is not None:
            return self.listed, self.listed_witness
        if self.corrected_witness is not None:
            return self.corrected, self.corrected_witness
        return None

    def to_json(self) -> dict:
        return {
            "task": self.task.key,
            "source": self.source,
            "listed": format_class(self.listed),
            "listed_witness": list(self.listed_witness.as_tuple()) if self.listed_witness else None,
            "listed_error": self.listed_error,
            "corrected": format_class(self.corrected) if self.corrected is not None else None,
            "corrected_witness": list(self.corrected_witness.as_tuple()) if self.corrected_witness else None,
            "status": FLAGGED if self.flagged else "ok",
        }


def _witness(rep: DivisorClass, target: DivisorClass) -> tuple[CongruenceWitness | None, str]:
    try:
        return congruence_check(rep, target), ""
    except NoCongruenceError as exc:
        return None, str(exc)


def audit_representative(task: VanishingTask, ks_torsion: int = 1,
                         overrides: dict[str, DivisorClass] | None = None) -> RepresentativeAudit:
    overrides = overrides or {}
    target = target_class(task, ks_torsion)
    if task.key in overrides:
        rep = overrides[task.key]
        w, err = _witness(rep, target)
        return RepresentativeAudit(task, rep, w, err, source="override")
    if task.key not in LISTED_TABLE:
        raise NotInTableError(task.key)
    listed = LISTED_TABLE[task.key]
    w, err = _witness(listed, target)
    corrected = CORRECTED_TABLE.get(task.key)
    cw = _witness(corrected, target)[0] if corrected is not None else None
    return RepresentativeAudit(task, listed, w, err, corrected, cw)


def representative_for(task: VanishingTask, ks_torsion: int = 1,
                       overrides: dict[str, DivisorClass] | None = None) -> tuple[DivisorClass, CongruenceWitness]:
    audit = audit_representative(task, ks_torsion, overrides)
    chosen = audit.chosen
    if chosen is None:
        raise NoCongruenceError(f"{task.key}: {audit.listed_error}")
    return chosen


# ---------------------------------------------------------------------------
# methods


def nef_h_vanishing(task: VanishingTask, ks_torsion: int = 1) -> CertificateEntry | None:
    c = target_class(task, ks_torsion)
    value = glued_pair(glue(c), glue(B1))
    if value >= 0:
        return None
    assumptions = (ASSUME_NEF,) + ((ASSUME_SERRE,) if task.p == 2 else ())
    return CertificateEntry(task, NEF, Verdict(PROVEN), pairing_with_B1=value, assumptions=assumptions)


def h0_without_points(d: DivisorClass) -> int | None:
    """h^0 on Y decided by the degree alone, or None."""
    deg = d["H"]
    if deg < 0:
        return 0
    if deg == 0:
        return 0 if any(c < 0 for c in d.coords[1:]) else 1
    return None


def degree_bound_on_Y(task: VanishingTask) -> CertificateEntry | None:
    if not 1 <= task.j < task.i <= 9:
        return None
    if task.p == 0:
        rep = -E(task.i) + E(task.j)
        target = target_class(task)
        assumptions: tuple[str, ...] = (ASSUME_PERTURB,)
    else:
        rep = K_Y + E(task.i) - E(task.j)
        target = target_class(task)
        assumptions = (ASSUME_PERTURB, ASSUME_SERRE)
    g = glue(rep)
    bound = h0_without_points(rep) + plane_twist_excess(g.d1) + plane_twist_excess(g.d2)
    return CertificateEntry(task, DEGREE, Verdict(PROVEN if bound == 0 else BOUND_ONLY, bound),
                            bound=bound, representative=rep, congruence=congruence_check(rep, target),
                            twists=(g.d1, g.d2), h0_on_Y=h0_without_points(rep), assumptions=assumptions)


class SymmetryNotApplicable(ValueError):
    pass


def symmetry_reduce(task: VanishingTask) -> tuple[VanishingTask, str]:
    """Replace an orbit index 1..8 by 9 when the other index is outside 1..9."""
    i, j = task.i, task.j
    orbit = range(1, 9)
    if j in orbit and i in (10, 11, 12):
        return VanishingTask(i, 9, task.p), f"exchange E{j} <-> E9"
    if i in orbit and j == 0:
        return VanishingTask(9, 0, task.p), f"exchange E{i} <-> E9"
    raise SymmetryNotApplicable(f"{task.key} has no orbit index to move")


def normalize(task: VanishingTask) -> VanishingTask:
    try:
        return symmetry_reduce(task)[0]
    except SymmetryNotApplicable:
        return task


def plane_twist_excess(d: int) -> int:
    """``h0(O_W(d)) - h0(O_A(2d))`` for a plane W and its conic A."""
    if d < 0:
        return 0
    return (d + 1) * (d + 2) // 2 - (2 * d + 1)


def semicontinuity_terms(d: DivisorClass, cfg: PointConfig,
                         h0_fn: Callable[[FatPointSystem], int] = h0) -> tuple[int, int, int, int]:
    g = glue(d)
    on_y = h0_without_points(d)
    if on_y is None:
        on_y = h0_fn(divisor_to_system(d, cfg))
    return on_y + plane_twist_excess(g.d1) + plane_twist_excess(g.d2), on_y, g.d1, g.d2


def semicontinuity_bound(d: DivisorClass, cfg: PointConfig) -> int:
    return semicontinuity_terms(d, cfg)[0]


# ---------------------------------------------------------------------------
# report


@dataclass
class Report:
    config: dict
    entries: list[CertificateEntry]
    representatives: list[RepresentativeAudit]
    h1_closure: list[dict]
    findings: list[str]
    ks_torsion: int = 1
    oracle: str = "modular"
    version: str = __version__
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        keys = [e.task for e in self.entries]
        assert sorted(keys) == sorted(required_tasks()) and len(set(keys)) == 156
        assert len(self.h1_closure) == 78
        self.summary = summarize(self.entries)

    @property
    def exit_code(self) -> int:
        return 0 if all(e.verdict.status == PROVEN for e in self.entries) else 3

    def entry(self, key: str) -> CertificateEntry:
        return next(e for e in self.entries if e.task.key == key)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "config": self.config,
            "ks_torsion": self.ks_torsion,
            "oracle": self.oracle,
            "summary": self.summary,
            "entries": [e.to_json() for e in self.entries],
            "representatives": [a.to_json() for a in self.representatives],
            "h1_closure": self.h1_closure,
            "findings": self.findings,
            "assumptions": [ASSUME_EXCEPTIONAL],
            "exit_code": self.exit_code,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def summarize(entries: list[CertificateEntry]) -> dict:
    methods = Counter(e.method for e in entries)
    verdicts = Counter(e.verdict.status for e in entries)
    return {
        "tasks": len(entries),
        "methods": {m: methods.get(m, 0) for m in METHOD_ORDER if m != CHI},
        "verdicts": {v: verdicts.get(v, 0) for v in (PROVEN, BOUND_ONLY, FLAGGED)},
    }


def config_echo(cfg: PointConfig) -> dict:
    h1, h2 = cfg.cubics
    return {
        "h1": str(h1), "h2": str(h2),
        "e0": str(cfg.e0), "e9": str(cfg.e9),
        "node1": str(cfg.node1), "node2": str(cfg.node2),
        "node_assignment": cfg.node_assignment,
        "orbit_minpoly": [str(c) for c in cfg.orbit.minpoly.coeffs],
        "orbit_irreducible_mod": cfg.orbit.irreducible_mod,
    }


class _H0Cache:
    """Exact h^0 per plane system, optionally with the modular cross-check."""

    def __init__(self, cfg: PointConfig, oracle: str):
        self.cfg = cfg
        self.oracle = oracle
        self.exact: dict[DivisorClass, int] = {}
        self.checks: dict[DivisorClass, dict] = {}

    def __call__(self, d: DivisorClass) -> tuple[int, dict | None]:
        if d not in self.exact:
            sys = divisor_to_system(d, self.cfg)
            self.exact[d] = h0(sys)
            if self.oracle == "modular" and not sys.is_empty and sys.condition_count:
                value, mr = h0_modular(sys)
                self.checks[d] = {
                    "h0": value,
                    "primes": [p for p, _ in mr.per_prime],
                    "ranks": [r for _, r in mr.per_prime],
                    "agree": value == self.exact[d] and mr.consistent,
                }
        return self.exact[d], self.checks.get(d)


def _semicontinuity_entry(task: VanishingTask, rep: DivisorClass, witness: CongruenceWitness,
                          cache: _H0Cache, extra: tuple[str, ...] = ()) -> CertificateEntry:
    g = glue(rep)
    on_y = h0_without_points(rep)
    check = None
    if on_y is None:
        on_y, check = cache(rep)
    bound = on_y + plane_twist_excess(g.d1) + plane_twist_excess(g.d2)
    assumptions = (ASSUME_PERTURB,) + extra + ((ASSUME_SERRE,) if task.p == 2 else ())
    if check is not None and not check["agree"]:
        verdict = Verdict(FLAGGED, bound, "modular oracle disagrees with exact rank")
    elif bound == 0:
        verdict = Verdict(PROVEN)
    else:
        verdict = Verdict(BOUND_ONLY, bound, f"h0 bound {bound} at the special configuration")
    return CertificateEntry(task, SEMI, verdict, bound=bound, representative=rep, congruence=witness,
                            twists=(g.d1, g.d2), h0_on_Y=on_y, assumptions=assumptions, oracle=check)


def verify_all(cfg: PointConfig, ks_torsion: int = 1, oracle: str = "modular",
               overrides: dict[str, DivisorClass] | None = None) -> Report:
    if ks_torsion not in (0, 1):
        raise ValueError("ks_torsion must be 0 or 1")
    if oracle not in ("modular", "off"):
        raise ValueError("oracle must be 'modular' or 'off'")
    overrides = overrides or {}
    cache = _H0Cache(cfg, oracle)
    findings: list[str] = []
    entries: dict[VanishingTask, CertificateEntry] = {}
    audits: list[RepresentativeAudit] = []

    def resolve_direct(task: VanishingTask) -> CertificateEntry:
        entry = nef_h_vanishing(task, ks_torsion) or degree_bound_on_Y(task)
        if entry is not None:
            return entry
        target = target_class(task, ks_torsion)
        try:
            audit = audit_representative(task, ks_torsion, overrides)
        except NotInTableError:
            rep = reduced_representative(target)
            return _semicontinuity_entry(task, rep, congruence_check(rep, target), cache,
                                         ("representative: reduced target",))
        audits.append(audit)
        if audit.flagged:
            if audit.corrected is None:
                raise NoCongruenceError(f"{task.key}: {audit.listed_error}")
            findings.append(f"{task.key}: listed representative {format_class(audit.listed)} fails the "
                            f"congruence ({audit.listed_error}); using {format_class(audit.corrected)}")
        rep, witness = audit.chosen
        return _semicontinuity_entry(task, rep, witness, cache)

    tasks = required_tasks()
    # tasks that need no symmetry move first, so reduced ones can inherit
    for task in tasks:
        if normalize(task) == task or nef_h_vanishing(task, ks_torsion) is not None:
            entries[task] = resolve_direct(task)
    for task in tasks:
        if task in entries:
            continue
        target_task, why = symmetry_reduce(task)
        inherited = entries[target_task]
        if inherited.verdict.status == PROVEN:
            verdict = Verdict(PROVEN)
        else:
            verdict = Verdict(FLAGGED, inherited.bound, f"inherits bound {inherited.bound} from {target_task.key}")
        assumptions = (ASSUME_GENERIC,) + tuple(a for a in inherited.assumptions if a != ASSUME_GENERIC)
        entries[task] = CertificateEntry(
            task, SYMMETRY, verdict, bound=inherited.bound, reduced_to=target_task,
            assumptions=assumptions + (why,))

    for e in entries.values():
        if e.method == SEMI and e.verdict.status != PROVEN:
            findings.append(f"{e.task.key}: {e.verdict.reason}")
    tri1 = (cfg.e9, cfg.e0, cfg.node1)
    tri2 = (cfg.e9, cfg.node1, cfg.node2)
    for name, tri in (("(e9, e0, node1)", tri1), ("(e9, node1, node2)", tri2)):
        if colinear(*tri):
            findings.append(f"{name} colinear: det {det3(*tri)}")

    closure = []
    for i in range(13):
        for j in range(i):
            chi = chi_glued_difference(i, j)
            both = all(entries[VanishingTask(i, j, p)].verdict.status == PROVEN for p in (0, 2))
            closure.append({"pair": [i, j], "chi": chi, "h0_h2_proven": both, "h1_vanishes": both and chi == 0})
    ordered = [entries[t] for t in tasks]
    audits.sort(key=lambda a: a.task)
    return Report(config_echo(cfg), ordered, audits, closure, findings, ks_torsion, oracle)


def parse_overrides(raw: dict) -> dict[str, DivisorClass]:
    out = {}
    for key, value in raw.items():
        VanishingTask.parse(key)
        if len(value) != 13:
            raise ValueError(f"override {key}: need 13 integers")
        out[key] = parse_class(value)
    return out

