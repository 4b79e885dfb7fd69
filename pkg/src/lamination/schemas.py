"""JSON schemas for the input files and the report, plus loaders."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .bratteli import BratteliDiagram
from .errors import SchemaError
from .surface import SingularityData

_MATRIX = {
    "type": "array",
    "minItems": 1,
    "items": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}},
}

DIAGRAM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "diagram",
    "type": "object",
    "properties": {
        "rank": {"type": "integer", "minimum": 2},
        "prefix": {"type": "array", "items": _MATRIX},
        "period": {"type": "array", "minItems": 1, "items": _MATRIX},
    },
    "required": ["rank", "prefix"],
    "additionalProperties": False,
}

_TYPES = {"type": "array", "minItems": 1, "items": {"type": "number", "minimum": 0}}

# {"ks": [...]} is canonical; a bare array is accepted too
DELTA_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "delta",
    "oneOf": [
        {
            "type": "object",
            "properties": {"ks": _TYPES},
            "required": ["ks"],
            "additionalProperties": False,
        },
        _TYPES,
    ],
}

_CHECK = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "passed": {"type": "boolean"},
        "detail": {"type": "string"},
    },
    "required": ["name", "passed", "detail"],
    "additionalProperties": False,
}

_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_NUM_LIST = {"type": "array", "items": {"type": "number"}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "lamination report",
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "input": {
            "type": "object",
            "properties": {
                "diagram_digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                "diagram": DIAGRAM_SCHEMA,
                "delta": _TYPES,
            },
            "required": ["diagram_digest", "diagram", "delta"],
        },
        "config": {"type": "object"},
        "invariants": {
            "type": "object",
            "properties": {
                "genus": {"type": "integer", "minimum": 1},
                "components": {"type": "integer", "minimum": 1},
                "intervals": {"type": "integer", "minimum": 2},
                "euler_characteristic": {"type": "integer"},
                "polygon_sides": _INT_LIST,
            },
            "required": ["genus", "components", "intervals", "euler_characteristic"],
        },
        "unimodular": {
            "type": "object",
            "properties": {"passed": {"type": "boolean"}, "levels": {"type": "array"}},
            "required": ["passed", "levels"],
        },
        "ergodicity": {
            "type": "object",
            "properties": {
                "verdict": {"enum": ["StrictlyErgodic", "NotContracting", "Inconclusive"]},
                "reason": {"type": "string"},
                "depth_used": {"type": "integer"},
            },
            "required": ["verdict", "reason", "depth_used"],
        },
        "state": {
            "type": "object",
            "properties": {
                "lambda": _NUM_LIST,
                "tolerance": {"type": "number"},
                "depth_used": {"type": "integer"},
            },
            "required": ["lambda", "tolerance", "depth_used"],
        },
        "permutation": {
            "type": "object",
            "properties": {
                "one_line": _INT_LIST,
                "cycles": {"type": "array", "items": _INT_LIST},
                "irreducible": {"type": "boolean"},
            },
            "required": ["one_line", "cycles", "irreducible"],
        },
        "induction": {
            "type": "object",
            "properties": {
                "steps": {"type": "integer"},
                "contraction_constant": {"type": "number"},
                "theta": {
                    "type": "object",
                    "properties": {"value": {"type": "number"}, "radius": {"type": "number"}},
                    "required": ["value", "radius"],
                },
                "windows": {"type": "array"},
            },
            "required": ["steps", "contraction_constant", "theta", "windows"],
        },
        "precode": {
            "type": "object",
            "properties": {"levels": {"type": "integer"}, "symbols": _INT_LIST, "text": {"type": "string"}},
            "required": ["levels", "symbols", "text"],
        },
        "code": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "length": {"type": "integer"},
                        "symbols": _INT_LIST,
                        "text": {"type": "string"},
                    },
                    "required": ["length", "symbols", "text"],
                },
            ]
        },
        "analysis": {
            "type": "object",
            "required": ["length", "period", "recurrence", "complexity", "frequencies", "itinerary"],
        },
        "theorem_checks": {"type": "array", "items": _CHECK},
        "disclaimer": {"type": "string"},
        "limitations": {"type": "array", "items": {"type": "string"}},
    },
    "required": [
        "version",
        "input",
        "config",
        "invariants",
        "unimodular",
        "ergodicity",
        "state",
        "permutation",
        "induction",
        "precode",
        "code",
        "analysis",
        "theorem_checks",
        "disclaimer",
        "limitations",
    ],
    "additionalProperties": False,
}


def validate(document, schema: dict, name: str) -> None:
    try:
        jsonschema.validate(document, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{name}: {exc.message} at {where}") from exc


def _read(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def parse_diagram(document) -> BratteliDiagram:
    validate(document, DIAGRAM_SCHEMA, "diagram")
    return BratteliDiagram.from_dict(document)


def parse_delta(document) -> SingularityData:
    validate(document, DELTA_SCHEMA, "delta")
    ks = document["ks"] if isinstance(document, dict) else document
    return SingularityData(tuple(ks))


def load_diagram(path) -> BratteliDiagram:
    return parse_diagram(_read(path))


def load_delta(path) -> SingularityData:
    return parse_delta(_read(path))


def validate_report(document) -> None:
    validate(document, REPORT_SCHEMA, "report")
