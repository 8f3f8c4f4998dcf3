"""JSON Schemas for the envelopes written by ``lorenz-jel ... --format json``.

Non-finite statistics are written as the string ``"inf"`` so the output is
strict JSON.
"""

_NUMBER_OR_INF = {"oneOf": [{"type": "number"}, {"const": "inf"}]}

PROVENANCE = {
    "type": "object",
    "required": ["tool", "version", "seed", "config"],
    "properties": {
        "tool": {"const": "lorenz-jel"},
        "version": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "config": {"type": "object"},
    },
}

_TEST_ROW = {
    "type": "object",
    "required": ["method", "t", "statistic", "p_value", "reject", "alpha", "hull_ok", "n1", "n2"],
    "properties": {
        "method": {"enum": ["JEL", "AJEL"]},
        "t": {"type": "number", "minimum": 0, "maximum": 1},
        "statistic": _NUMBER_OR_INF,
        "p_value": {"type": "number", "minimum": 0, "maximum": 1},
        "reject": {"type": "boolean"},
        "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "hull_ok": {"type": "boolean"},
        "degenerate": {"type": "boolean"},
        "converged": {"type": "boolean"},
        "endpoint": {"type": "boolean"},
        "n1": {"type": "integer", "minimum": 2},
        "n2": {"type": "integer", "minimum": 2},
    },
}

_CURVE_ROW = {
    "type": "object",
    "required": ["t", "lorenz", "gl"],
    "properties": {
        "t": {"type": "number", "minimum": 0, "maximum": 1},
        "lorenz": {"type": "number"},
        "gl": {"type": "number"},
        "analytic_gl": {"type": "number"},
    },
}

_SIM_ROW = {
    "type": "object",
    "required": ["method", "t", "n1", "n2", "rate", "se", "hull_fail_rate", "nonconverged", "reps"],
    "properties": {
        "method": {"enum": ["JEL", "AJEL"]},
        "t": {"type": "number"},
        "n1": {"type": "integer"},
        "n2": {"type": "integer"},
        "rate": {"type": "number", "minimum": 0, "maximum": 1},
        "se": {"type": "number", "minimum": 0},
        "hull_fail_rate": {"type": "number", "minimum": 0, "maximum": 1},
        "nonconverged": {"type": "integer", "minimum": 0},
        "reps": {"type": "integer", "minimum": 1},
    },
}


def _envelope(command: str, payload: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["command", "provenance", "payload"],
        "properties": {
            "command": {"const": command},
            "provenance": PROVENANCE,
            "payload": payload,
        },
    }


SCHEMAS = {
    "test": _envelope("test", {
        "type": "object", "required": ["results"],
        "properties": {"results": {"type": "array", "items": _TEST_ROW}},
    }),
    "curve": _envelope("curve", {
        "type": "object", "required": ["rows"],
        "properties": {"rows": {"type": "array", "items": _CURVE_ROW}},
    }),
    "simulate": _envelope("simulate", {
        "type": "object", "required": ["meta", "rows"],
        "properties": {"meta": {"type": "object"}, "rows": {"type": "array", "items": _SIM_ROW}},
    }),
}
