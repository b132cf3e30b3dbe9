"""JSON game description files.

Example::

    {
      "scheme": "mw",
      "preset": "game28",
      "initial_state": {"b2": 0.5, "pairing": "aligned"}
    }

``bimatrix`` (a 2x2 list of [row, column] payoff pairs) may replace
``preset``; when both are present the explicit matrix wins.  ``gamma``
sets the entanglement of the eisert scheme.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .bimatrix import PRESETS, PayoffBimatrix, preset
from .errors import DomainError, ValidationError
from .mw import PAIRINGS

SCHEMES = ("classical", "eisert", "mw")


@dataclass(frozen=True)
class GameSpec:
    scheme: str
    bimatrix: PayoffBimatrix
    b2: float = 0.0
    pairing: str = "aligned"
    gamma: float = math.pi / 2
    preset: str | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValidationError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.pairing not in PAIRINGS:
            raise ValidationError(f"pairing must be one of {PAIRINGS}, got {self.pairing!r}")
        if not isinstance(self.bimatrix, PayoffBimatrix):
            raise ValidationError("bimatrix must be a PayoffBimatrix")
        if not (0.0 <= self.b2 <= 1.0):
            raise DomainError(f"b2={self.b2!r} outside [0, 1]")
        if not (0.0 <= self.gamma <= math.pi / 2):
            raise DomainError(f"gamma={self.gamma!r} outside [0, pi/2]")


def _number(x, name):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(f"{name} must be a number, got {x!r}")
    return float(x)


def parse_game_spec(doc: dict) -> GameSpec:
    if not isinstance(doc, dict):
        raise ValidationError("game file must contain a JSON object")
    unknown = set(doc) - {"scheme", "preset", "bimatrix", "initial_state", "gamma"}
    if unknown:
        raise ValidationError(f"unknown keys in game file: {sorted(unknown)}")
    name = doc.get("preset")
    if "bimatrix" in doc:
        m = PayoffBimatrix.from_pairs(doc["bimatrix"])
    elif name is not None:
        m = preset(name)
    else:
        raise ValidationError("game file needs a 'preset' or a 'bimatrix'")
    init = doc.get("initial_state", {}) or {}
    if not isinstance(init, dict):
        raise ValidationError("initial_state must be an object")
    return GameSpec(
        scheme=doc.get("scheme", "mw"),
        bimatrix=m,
        b2=_number(init.get("b2", 0.0), "initial_state.b2"),
        pairing=init.get("pairing", "aligned"),
        gamma=_number(doc.get("gamma", math.pi / 2), "gamma"),
        preset=name,
    )


def load_game_spec(path) -> GameSpec:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return parse_game_spec(doc)


def dump_game_spec(spec: GameSpec) -> dict:
    doc = {"scheme": spec.scheme, "bimatrix": spec.bimatrix.to_pairs()}
    if spec.preset is not None:
        doc["preset"] = spec.preset
    if spec.scheme == "mw":
        doc["initial_state"] = {"b2": spec.b2, "pairing": spec.pairing}
    elif spec.scheme == "eisert":
        doc["gamma"] = spec.gamma
    return doc


def preset_spec(name: str, scheme: str = "mw") -> GameSpec:
    return GameSpec(scheme=scheme, bimatrix=preset(name), preset=name)


__all__ = ["GameSpec", "PRESETS", "SCHEMES", "dump_game_spec", "load_game_spec", "parse_game_spec", "preset_spec"]
