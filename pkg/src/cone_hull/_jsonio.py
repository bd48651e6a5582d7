"""JSON schemas and converters for the CLI surface.

All rational values travel as strings like "3/4" (plain integers are also
accepted); complex numbers as {"re": .., "im": ..} or {"mod": .., "arg": ..}.
Schema violations raise SchemaError with the JSON path of the offending
field.
"""
from __future__ import annotations

import cmath
import json
from fractions import Fraction

import jsonschema

from ._rational import format_frac, frac
from .errors import SchemaError
from .extremal import ReinhardtBody
from .polytope import RationalPolytope
from .series import ConeSeries

RATIONAL = {"anyOf": [{"type": "string", "pattern": r"^-?\d+(/[1-9]\d*)?$"},
                      {"type": "integer"}]}
NUMBER_OR_RATIONAL = {"anyOf": [{"type": "number"},
                                {"type": "string", "pattern": r"^-?\d+(/[1-9]\d*)?$"}]}
COMPLEX = {
    "anyOf": [
        {"type": "object",
         "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
         "required": ["re"], "additionalProperties": False},
        {"type": "object",
         "properties": {"mod": {"type": "number"}, "arg": {"type": "number"}},
         "required": ["mod"], "additionalProperties": False},
        {"type": "number"},
    ]
}

POLYTOPE_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "vertices": {"type": "array", "minItems": 1,
                     "items": {"type": "array", "items": RATIONAL}},
    },
    "required": ["dim", "vertices"],
    "additionalProperties": False,
}

BODY_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "pieces": {"type": "array", "minItems": 1, "items": {
            "type": "object",
            "properties": {
                "J": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "A": {"type": "array", "items": {"type": "array",
                                                 "items": NUMBER_OR_RATIONAL}},
            },
            "required": ["J", "A"],
            "additionalProperties": False,
        }},
    },
    "required": ["dim", "pieces"],
    "additionalProperties": False,
}

SERIES_SCHEMA = {
    "type": "object",
    "properties": {
        "terms": {"type": "array", "items": {
            "type": "object",
            "properties": {
                "alpha": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "re": {"type": "number"},
                "im": {"type": "number"},
            },
            "required": ["alpha", "re"],
            "additionalProperties": False,
        }},
        "geometric": {
            "type": "object",
            "properties": {
                "alpha0": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "c_re": {"type": "number"},
                "c_im": {"type": "number"},
            },
            "required": ["alpha0", "c_re"],
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def validate(instance, schema, where: str = "input"):
    try:
        jsonschema.validate(instance, schema)
    except jsonschema.ValidationError as e:
        path = "$" + "".join(f"[{p!r}]" if isinstance(p, str) else f"[{p}]"
                             for p in e.absolute_path)
        raise SchemaError(f"{where}: {e.message} at {path}") from None


def load_config(path: str, schema) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"input file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON in {path}: {e}") from None
    validate(data, schema, where=path)
    return data


def parse_polytope(obj) -> RationalPolytope:
    validate(obj, POLYTOPE_SCHEMA, where="S")
    return RationalPolytope(obj["dim"], [tuple(frac(c) for c in v)
                                         for v in obj["vertices"]])


def parse_body(obj) -> ReinhardtBody:
    validate(obj, BODY_SCHEMA, where="K")
    pieces = []
    for piece in obj["pieces"]:
        J = tuple(j - 1 for j in piece["J"])  # JSON is 1-based
        A = [tuple(_num_or_frac(c) for c in a) for a in piece["A"]]
        pieces.append((J, A))
    return ReinhardtBody(obj["dim"], pieces)


def _num_or_frac(v):
    if isinstance(v, str):
        return frac(v)
    if isinstance(v, bool):
        raise SchemaError("boolean is not a coordinate")
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def parse_complex(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if "re" in obj:
        return complex(obj["re"], obj.get("im", 0.0))
    return obj["mod"] * cmath.exp(1j * obj.get("arg", 0.0))


def parse_series(S: RationalPolytope, obj) -> ConeSeries:
    validate(obj, SERIES_SCHEMA, where="series")
    if ("terms" in obj) == ("geometric" in obj):
        raise SchemaError("series: give exactly one of 'terms' / 'geometric' at $")
    if "geometric" in obj:
        g = obj["geometric"]
        return ConeSeries(S, geometric=(tuple(g["alpha0"]),
                                        complex(g["c_re"], g.get("c_im", 0.0))))
    terms = {tuple(t["alpha"]): complex(t["re"], t.get("im", 0.0))
             for t in obj["terms"]}
    return ConeSeries(S, terms=terms)


def emit_polytope(P: RationalPolytope) -> dict:
    return {"dim": P.dim,
            "vertices": [[format_frac(c) for c in v] for v in P.vertices]}


def jsonable(value):
    """Recursively convert library values into JSON-serializable data."""
    if isinstance(value, Fraction):
        return format_frac(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, RationalPolytope):
        return emit_polytope(value)
    raise TypeError(f"cannot serialize {type(value)}")


def dumps(data) -> str:
    return json.dumps(jsonable(data), sort_keys=True, indent=2) + "\n"


def fmt17(x) -> str:
    """17-significant-digit float formatting for CSV cells."""
    return format(float(x), ".17g")
