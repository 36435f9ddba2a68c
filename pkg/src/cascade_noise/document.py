"""Chain description documents.

A chain document is JSON::

    {
      "source": {"signal": 100, "noise": 1},
      "stages": [
        {"gain": 10, "added_noise": 5},
        {"gain_db": 10, "friis_figure_db": 1.76}
      ]
    }

Each stage carries exactly one of ``gain``/``gain_db`` and exactly one of
``added_noise``/``friis_figure_db``/``corrected_figure_db``. Unknown members
are rejected.
"""

from __future__ import annotations

import json
import math
from typing import Optional

import jsonschema

from .chain import CascadeChain, RawStageSpec, SourceSpec

_NUMBER = {"type": "number"}

CHAIN_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["source", "stages"],
    "properties": {
        "source": {
            "type": "object",
            "additionalProperties": False,
            "required": ["signal", "noise"],
            "properties": {
                "signal": {"type": "number", "exclusiveMinimum": 0},
                "noise": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "stages": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "properties": {
                    "gain": {"type": "number", "exclusiveMinimum": 0},
                    "gain_db": _NUMBER,
                    "added_noise": {"type": "number", "minimum": 0},
                    "friis_figure_db": {"type": "number", "minimum": 0},
                    "corrected_figure_db": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(CHAIN_SCHEMA)

# document member -> RawStageSpec attribute
_STAGE_MEMBERS = {
    "gain": "gain_linear",
    "gain_db": "gain_db",
    "added_noise": "added_noise",
    "friis_figure_db": "friis_figure_db",
    "corrected_figure_db": "corrected_figure_db",
}


class ChainParseError(ValueError):
    """Malformed or invalid chain document. ``stage`` is 1-based when known."""

    def __init__(self, message: str, stage: Optional[int] = None, line: Optional[int] = None):
        self.stage = stage
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if stage is not None:
            prefix += f"stage {stage}: "
        super().__init__(prefix + message)


def _reject_constant(token):
    raise ValueError(f"non-finite number {token} is not allowed")


def _parse_float(token):
    value = float(token)
    if not math.isfinite(value):
        raise ValueError(f"number {token} overflows a 64-bit float")
    return value


def parse_chain_document(text: str) -> tuple[SourceSpec, list[RawStageSpec]]:
    """Parse and validate a chain document into a source and raw stage specs."""
    try:
        doc = json.loads(text, parse_float=_parse_float, parse_int=_parse_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ChainParseError(f"malformed JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from exc
    except ValueError as exc:
        raise ChainParseError(str(exc)) from exc

    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = list(err.absolute_path)
        stage = path[1] + 1 if len(path) >= 2 and path[0] == "stages" and isinstance(path[1], int) else None
        where = "/".join(str(p) for p in path) or "document"
        raise ChainParseError(f"{where}: {err.message}", stage=stage)

    source = SourceSpec(float(doc["source"]["signal"]), float(doc["source"]["noise"]))
    raw = []
    for x, element in enumerate(doc["stages"], start=1):
        spec = RawStageSpec(**{_STAGE_MEMBERS[k]: float(v) for k, v in element.items()})
        problems = spec.problems(x)
        if problems:
            raise ChainParseError("; ".join(p.message.replace("gain_linear", "gain") for p in problems), stage=x)
        raw.append(spec)
    return source, raw


def chain_to_document(chain: CascadeChain) -> str:
    """Serialize a resolved chain with linear fields only."""
    doc = {
        "source": {"signal": chain.source.signal_power, "noise": chain.source.noise_power},
        "stages": [{"gain": s.gain, "added_noise": s.added_noise} for s in chain.stages],
    }
    return json.dumps(doc, indent=2) + "\n"
