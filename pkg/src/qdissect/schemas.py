"""JSON Schemas for the machine-readable outputs."""

_PROGRESSION = {
    "oneOf": [
        {"const": "identity"},
        {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
    ]
}

_REPORT = {
    "title": "CheckReport",
    "type": "object",
    "required": ["claim", "modulus", "progression", "checked", "status", "violations"],
    "additionalProperties": False,
    "properties": {
        "claim": {"type": "string"},
        "modulus": {"type": "integer", "minimum": 0},
        "progression": _PROGRESSION,
        "checked": {"type": "integer", "minimum": 1},
        "status": {"enum": ["pass", "fail"]},
        "violations": {
            "type": "array",
            "maxItems": 10,
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer"}, {"type": "string"}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "subchecks": {"type": "array", "items": {"$ref": "#/$defs/report"}},
    },
}

CHECK_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"report": _REPORT},
    "$ref": "#/$defs/report",
}

AGGREGATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {"report": _REPORT},
    "title": "Aggregate report",
    "type": "array",
    "items": {"$ref": "#/$defs/report"},
}

DISPLAY_REP = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DisplayRep",
    "type": "object",
    "required": ["alpha", "two_exponent", "beta", "rows"],
    "additionalProperties": False,
    "properties": {
        "alpha": {"type": "integer"},
        "two_exponent": {"type": "integer", "minimum": 0},
        "beta": {"type": "integer", "minimum": 1},
        "modulus": {"type": "integer", "minimum": 1},
        "rows": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [
                    {"type": "integer"},
                    {"type": "integer"},
                    {"type": "string", "pattern": "^-?[0-9]+$"},
                ],
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
}

DISSECT_OUTPUT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "dissect command output",
    "type": "object",
    "required": ["progression", "ells", "display"],
    "additionalProperties": False,
    "properties": {
        "progression": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "ells": {"type": "array", "items": {"enum": [0, 1, 2]}},
        "display": DISPLAY_REP,
    },
}
