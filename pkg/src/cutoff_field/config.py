"""Scenario configuration files (JSON, schema-validated)."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .free import MoverPair
from .profile import Profile
from .shock import Scenario

_NUM = {"type": "number"}

SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["phi_cut", "packet"],
    "additionalProperties": False,
    "properties": {
        "phi_cut": {"type": "number", "exclusiveMinimum": 0},
        "packet": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["kind", "w"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "triangular"},
                        "w": {"type": "number", "exclusiveMinimum": 0},
                        "amplitude": {"type": "number", "exclusiveMinimum": 0},
                    },
                },
                {
                    "type": "object",
                    "required": ["kind", "knots"],
                    "additionalProperties": False,
                    "properties": {
                        "kind": {"const": "knots"},
                        "knots": {
                            "type": "array",
                            "minItems": 2,
                            "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 3},
                        },
                        "eps": {"type": "number", "minimum": 0},
                    },
                },
            ]
        },
        "times": {
            "oneOf": [
                {"type": "array", "items": _NUM},
                {
                    "type": "object",
                    "required": ["from", "to", "count"],
                    "additionalProperties": False,
                    "properties": {
                        "from": _NUM,
                        "to": _NUM,
                        "count": {"type": "integer", "minimum": 1},
                    },
                },
            ]
        },
        "tolerances": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "event": {"type": "number", "exclusiveMinimum": 0},
                "root": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "grid": {
            "type": "object",
            "required": ["h", "L", "t_end"],
            "additionalProperties": False,
            "properties": {
                "h": {"type": "number", "exclusiveMinimum": 0},
                "L": {"type": "number", "exclusiveMinimum": 0},
                "t_end": _NUM,
            },
        },
        "validation": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


class ConfigError(ValueError):
    """Schema or syntax error, carrying the 1-based line it refers to."""

    def __init__(self, message: str, line: int = 1):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _line_of(text: str, path) -> int:
    # Walk the error path, searching forward for each quoted key.
    pos = 0
    for part in path:
        if isinstance(part, str):
            hit = re.compile(rf'"{re.escape(part)}"\s*:').search(text, pos)
            if hit:
                pos = hit.start()
    return text.count("\n", 0, pos) + 1


def _first_error(raw):
    validator = jsonschema.Draft202012Validator(SCHEMA)
    packet = raw.get("packet") if isinstance(raw, dict) else None
    if isinstance(packet, dict):
        # report against the packet branch named by its kind, not the oneOf as a whole
        for branch in SCHEMA["properties"]["packet"]["oneOf"]:
            if branch["properties"]["kind"]["const"] == packet.get("kind"):
                sub = jsonschema.Draft202012Validator(branch).iter_errors(packet)
                err = min(sub, key=lambda e: list(e.path), default=None)
                if err is not None:
                    err.path.appendleft("packet")
                    return err
    return min(validator.iter_errors(raw), key=lambda e: [str(p) for p in e.path], default=None)


@dataclass(frozen=True)
class ScenarioConfig:
    phi_cut: float
    packet: dict
    times: Any = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    grid: dict | None = None
    validation: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "ScenarioConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(exc.msg, exc.lineno) from exc
        err = _first_error(raw)
        if err is not None:
            path = list(err.absolute_path)
            where = "/".join(str(p) for p in path) or "<root>"
            raise ConfigError(f"{where}: {err.message}", _line_of(text, path))
        return cls(
            raw["phi_cut"],
            raw["packet"],
            raw.get("times", []),
            raw.get("tolerances", {}),
            raw.get("grid"),
            raw.get("validation", {}),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ScenarioConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
        return cls.parse(text)

    def packet_profile(self) -> Profile:
        p = self.packet
        if p["kind"] == "triangular":
            return Profile.triangle(p["w"], p.get("amplitude", 0.75 * self.phi_cut))
        return Profile.from_knots(p["knots"], p.get("eps", 0.0))

    def scenario(self) -> Scenario:
        return Scenario(
            self.phi_cut,
            MoverPair.mirrored(self.packet_profile()),
            tol_event=self.tolerances.get("event", 1e-12),
            tol_root=self.tolerances.get("root", 1e-12),
        )

    def time_list(self) -> list[float]:
        t = self.times
        if isinstance(t, dict):
            return [float(v) for v in np.linspace(t["from"], t["to"], t["count"])]
        return [float(v) for v in t]
