"""JSON schemas for everything the command line reads or writes."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

SCHEMA_VERSION = 1

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_SIGN = {"enum": [1, -1]}

LINK = {
    "type": "object",
    "required": ["n", "lk"],
    "properties": {
        "n": {"type": "integer", "minimum": 1, "maximum": 5},
        "lk": _INT_MATRIX,
    },
}

GROUP = {
    "type": "object",
    "required": ["degree", "generators"],
    "properties": {
        "degree": {"type": "integer", "minimum": 1},
        "generators": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
}

TREE = {
    "type": "object",
    "required": ["vertices", "edges", "labels"],
    "properties": {
        "vertices": {"type": "integer", "minimum": 1},
        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0},
                                             "minItems": 2, "maxItems": 2}},
        "labels": {"type": "object", "patternProperties": {"^[1-9][0-9]*$": {"type": "integer", "minimum": 0}},
                   "additionalProperties": False},
        "group": GROUP,
    },
}

WHITTEN_ELEMENT = {
    "type": "object",
    "required": ["eta", "eps", "rho"],
    "properties": {
        "eta": _SIGN,
        "eps": {"type": "array", "items": _SIGN},
        "rho": {"type": "array", "items": {"type": "integer", "minimum": 1}},
    },
}

REPORT = {
    "type": "object",
    "required": ["schema_version", "command", "flag"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "flag": {"type": "boolean"},
    },
}

SCHEMAS = {"link": LINK, "tree": TREE, "group": GROUP, "whitten": WHITTEN_ELEMENT, "report": REPORT}


class InputError(ValueError):
    """Input that does not match its schema or cannot be read."""


def validate(kind: str, data) -> None:
    try:
        jsonschema.validate(data, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{kind} input invalid at {where}: {exc.message}") from None


def load(kind: str, path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None
    validate(kind, data)
    return data


def dumps(report: dict) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
