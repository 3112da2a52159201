"""Bounded search for a configuration with both marked triples in general position."""

from __future__ import annotations

from dataclasses import dataclass

from .interpolation import colinear
from .pencil import (REFERENCE_E0, REFERENCE_H1, REFERENCE_H2, ConfigurationError, PointConfig,
                     build_config, translate)


@dataclass(frozen=True)
class Candidate:
    shift: tuple[int, int]
    config: PointConfig


def general_position(cfg: PointConfig) -> bool:
    return not (colinear(cfg.e9, cfg.e0, cfg.node1) or colinear(cfg.e9, cfg.node1, cfg.node2))


def translated_candidates(radius: int = 2):
    """Shifts ``(a, b)`` of the second cubic, ordered by size then lexicographically."""
    shifts = [(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1) if (a, b) != (0, 0)]
    shifts.sort(key=lambda s: (abs(s[0]) + abs(s[1]), s))
    return shifts


def find_alternate_config(radius: int = 2, require_irreducible: bool = True) -> Candidate:
    """First translate ``h2(x - a z, y - b z, z)`` giving a valid configuration in general position.

    With ``require_irreducible`` the degree-8 block must also be certified
    irreducible modulo some small prime.
    """
    for a, b in translated_candidates(radius):
        try:
            cfg = build_config(REFERENCE_H1, translate(REFERENCE_H2, a, b), REFERENCE_E0)
        except ConfigurationError:
            continue
        if not general_position(cfg):
            continue
        if require_irreducible and cfg.orbit.irreducible_mod is None:
            continue
        return Candidate((a, b), cfg)
    raise LookupError(f"no admissible translate within radius {radius}")
