"""Loading and writing the JSON configuration file."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .lattice import DivisorClass
from .pencil import (NODE_ASSIGNMENTS, REFERENCE_E0, REFERENCE_H1, REFERENCE_H2, Cubic, PointConfig,
                     ProjPointQ, build_config)
from .verifier import parse_overrides

KNOWN_KEYS = {"h1", "h2", "e0", "node_assignment", "overrides", "ks_torsion", "shear", "name"}


class InvalidInputError(ValueError):
    """Input file or arguments are malformed (exit code 2)."""


@dataclass
class RunConfig:
    point_config: PointConfig
    overrides: dict[str, DivisorClass] = field(default_factory=dict)
    ks_torsion: int = 1
    name: str = ""


def _cubic(raw, key: str) -> Cubic:
    try:
        return Cubic.from_list(raw)
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidInputError(f"{key}: {exc}") from exc


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise InvalidInputError("config must be a JSON object")
    unknown = set(data) - KNOWN_KEYS
    if unknown:
        raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    for key in ("h1", "h2", "e0"):
        if key not in data:
            raise InvalidInputError(f"missing key {key!r}")
    h1, h2 = _cubic(data["h1"], "h1"), _cubic(data["h2"], "h2")
    try:
        e0 = ProjPointQ(data["e0"])
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"e0: {exc}") from exc
    assignment = data.get("node_assignment", "h1->B1")
    if assignment not in NODE_ASSIGNMENTS:
        raise InvalidInputError(f"node_assignment must be one of {NODE_ASSIGNMENTS}")
    ks = data.get("ks_torsion", 1)
    if ks not in (0, 1):
        raise InvalidInputError("ks_torsion must be 0 or 1")
    overrides_raw = data.get("overrides", {})
    reps = overrides_raw.get("representatives", {}) if isinstance(overrides_raw, dict) else None
    if reps is None or set(overrides_raw) - {"representatives"}:
        raise InvalidInputError("overrides supports only 'representatives'")
    try:
        overrides = parse_overrides(reps)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"overrides: {exc}") from exc
    # ConfigurationError is a ValueError; callers map it to exit code 2 as well
    cfg = build_config(h1, h2, e0, assignment, shear=data.get("shear"))
    return RunConfig(cfg, overrides, ks, data.get("name", ""))


def load_config(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc
    return parse_config(data)


def config_dict(h1: Cubic, h2: Cubic, e0: ProjPointQ, name: str = "", **extra) -> dict:
    out = {
        "name": name,
        "h1": [[int(c), list(e)] for c, e in h1.form.to_list()],
        "h2": [[int(c), list(e)] for c, e in h2.form.to_list()],
        "e0": e0.integer_coords(),
        "node_assignment": "h1->B1",
        "overrides": {"representatives": {}},
    }
    out.update(extra)
    return out


def reference_config_dict() -> dict:
    return config_dict(REFERENCE_H1, REFERENCE_H2, REFERENCE_E0, name="reference")
