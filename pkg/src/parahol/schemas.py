"""JSON request schemas, one per CLI command.

The same dicts are shipped as files under docs/schemas/; a test pins the
two copies together.
"""

_RATIONAL = {"type": ["integer", "string"], "pattern": "^-?[0-9]+(/[0-9]+)?$"}

_FAMILY_FIELDS = {
    "family": {"enum": ["conformal", "cr"]},
    "params": {
        "type": "array",
        "items": {"type": "integer", "minimum": 0},
        "minItems": 1,
        "maxItems": 2,
    },
}

_NAMED_ELEMENT = {
    "type": "object",
    "additionalProperties": _RATIONAL,
}

_ALGEBRA_REQUEST = {
    "type": "object",
    "properties": dict(_FAMILY_FIELDS),
    "required": ["family", "params"],
    "additionalProperties": False,
}

CLASSIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "classify request",
    "type": "object",
    "properties": {
        **_FAMILY_FIELDS,
        "element": _NAMED_ELEMENT,
    },
    "required": ["family", "params", "element"],
    "additionalProperties": False,
}

ALGEBRA_INFO = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "algebra-info request",
    **_ALGEBRA_REQUEST,
}

ALGEBRA_VERIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "algebra-verify request",
    **_ALGEBRA_REQUEST,
}

FLAT_CLASSIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "flat-classify request",
    "type": "object",
    "properties": {
        "field": {
            "type": "object",
            "properties": {
                "a": {"type": "array", "items": _RATIONAL},
                "A": {"type": "array",
                      "items": {"type": "array", "items": _RATIONAL}},
                "s": _RATIONAL,
                "b": {"type": "array", "items": _RATIONAL},
                "signature": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 0},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
            "required": ["a", "A", "s", "b", "signature"],
            "additionalProperties": False,
        },
        "point": {"type": "array", "items": _RATIONAL},
    },
    "required": ["field", "point"],
    "additionalProperties": False,
}

VERIFY_IDENTITIES = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "verify-identities request",
    "type": "object",
    "properties": {
        "signature": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 2,
            "maxItems": 2,
        },
        "samples": {"type": "integer", "minimum": 1, "maximum": 500},
        "t": {"type": "number"},
    },
    "additionalProperties": False,
}

ORACLE_COMPARE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "oracle-compare request",
    **_ALGEBRA_REQUEST,
}

BY_COMMAND = {
    "algebra-info": ALGEBRA_INFO,
    "algebra-verify": ALGEBRA_VERIFY,
    "classify": CLASSIFY,
    "flat-classify": FLAT_CLASSIFY,
    "verify-identities": VERIFY_IDENTITIES,
    "oracle-compare": ORACLE_COMPARE,
}
