"""Versioned JSON files for states, tables, trajectories and reports."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import jsonschema
import numpy as np

from . import qubit
from .errors import OutOfRange, SchemaError
from .mat4prob import DIAG, PAIRS, ProbTable15

SCHEMA_VERSION = 1
KINDS = ("probability-triple", "density2", "amplitude2", "prob-table-15")

_prob = {"type": "number", "minimum": 0.0, "maximum": 1.0}
_row = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_mat2 = {"type": "array", "items": _row, "minItems": 2, "maxItems": 2}

PAYLOAD_SCHEMAS = {
    "probability-triple": {
        "type": "object",
        "properties": {"p1": {"type": "number"}, "p2": {"type": "number"}, "p3": {"type": "number"}},
        "required": ["p1", "p2", "p3"],
        "additionalProperties": False,
    },
    "density2": {
        "type": "object",
        "properties": {"re": _mat2, "im": _mat2},
        "required": ["re", "im"],
        "additionalProperties": False,
    },
    "prob-table-15": {
        "type": "object",
        "properties": {
            "diag": {
                "type": "object",
                "properties": {k: {"type": "number"} for k in DIAG},
                "required": list(DIAG),
                "additionalProperties": False,
            },
            "pairs": {
                "type": "object",
                "properties": {
                    k: {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
                    for k in PAIRS
                },
                "required": list(PAIRS),
                "additionalProperties": False,
            },
        },
        "required": ["diag", "pairs"],
        "additionalProperties": False,
    },
}
PAYLOAD_SCHEMAS["amplitude2"] = PAYLOAD_SCHEMAS["density2"]

STATE_FILE_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"type": "integer"},
        "kind": {"enum": list(KINDS)},
        "payload": {"type": "object"},
    },
    "required": ["schema_version", "kind", "payload"],
}

TRAJECTORY_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": "trajectory"},
        "method": {"type": "string"},
        "hamiltonian": {
            "type": "object",
            "properties": {k: {"type": "number"} for k in ("x", "y", "z1", "z2")},
            "required": ["x", "y", "z1", "z2"],
        },
        "samples": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {k: {"type": "number"} for k in ("t", "p1", "p2", "p3", "eigenvalue_drift")},
                "required": ["t", "p1", "p2", "p3"],
            },
        },
    },
    "required": ["schema_version", "kind", "method", "hamiltonian", "samples"],
}

ERRATA_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"const": "errata-ledger"},
        "seed": {"type": "integer"},
        "errata": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "printed_deviation", "corrected_deviation", "tracked", "confirmed"],
            },
        },
        "checks": {"type": "array"},
        "unexpected": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["schema_version", "kind", "seed", "errata", "checks", "unexpected"],
}


@dataclass(frozen=True)
class StateFile:
    kind: str
    payload: dict
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "kind": self.kind, "payload": self.payload}


def validate(doc, schema) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as err:
        raise SchemaError(f"schema violation at {list(err.absolute_path)}: {err.message}") from None


def parse_state(doc) -> StateFile:
    validate(doc, STATE_FILE_SCHEMA)
    if doc["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc['schema_version']}; expected {SCHEMA_VERSION}")
    validate(doc["payload"], PAYLOAD_SCHEMAS[doc["kind"]])
    return StateFile(doc["kind"], doc["payload"], doc["schema_version"])


def read_json(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{path}: not valid JSON ({err})") from None


def write_json(path, doc) -> None:
    # json writes floats by repr, which round-trips every double
    Path(path).write_text(json.dumps(doc, indent=2, allow_nan=False) + "\n", encoding="utf-8")


def load_state(path) -> StateFile:
    return parse_state(read_json(path))


# -- conversions --------------------------------------------------------------


def triple_file(p) -> StateFile:
    p = qubit.as_triple(p)
    return StateFile("probability-triple", {"p1": float(p[0]), "p2": float(p[1]), "p3": float(p[2])})


def matrix_file(kind: str, m) -> StateFile:
    m = np.asarray(m, dtype=complex)
    return StateFile(kind, {"re": m.real.tolist(), "im": m.imag.tolist()})


def table_file(table: ProbTable15) -> StateFile:
    return StateFile("prob-table-15", table.to_dict())


def as_matrix(state: StateFile) -> np.ndarray:
    if state.kind not in ("density2", "amplitude2"):
        raise SchemaError(f"expected a 2x2 matrix file, got kind {state.kind!r}")
    return np.asarray(state.payload["re"], dtype=float) + 1j * np.asarray(state.payload["im"], dtype=float)


def as_triple(state: StateFile) -> np.ndarray:
    """Probability triple of a ``probability-triple`` or ``density2`` file, range-checked."""
    if state.kind == "probability-triple":
        p = np.array([state.payload[k] for k in ("p1", "p2", "p3")], dtype=float)
        if not np.all(np.isfinite(p)) or np.any(p < 0.0) or np.any(p > 1.0):
            raise OutOfRange(f"probabilities must lie in [0, 1], got {p.tolist()}")
        return p
    if state.kind == "density2":
        return qubit.from_density(as_matrix(state))
    raise SchemaError(f"expected a qubit state file, got kind {state.kind!r}")


def as_table(state: StateFile) -> ProbTable15:
    if state.kind != "prob-table-15":
        raise SchemaError(f"expected a prob-table-15 file, got kind {state.kind!r}")
    return ProbTable15.from_dict(state.payload)
