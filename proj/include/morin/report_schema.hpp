#ifndef MORIN_REPORT_SCHEMA_HPP
#define MORIN_REPORT_SCHEMA_HPP

// Copy of schema/report.schema.json; the report_schema test keeps the two identical.

namespace morin
{

inline const char *report_schema_text()
{
    return R"schema({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "https://example.invalid/morin/report.schema.json",
  "title": "morin report",
  "oneOf": [
    {"$ref": "#/$defs/classify_report"},
    {"$ref": "#/$defs/fuzz_report"},
    {"$ref": "#/$defs/form_report"},
    {"$ref": "#/$defs/d_invariant_report"},
    {"$ref": "#/$defs/table_report"},
    {"$ref": "#/$defs/witness_report"},
    {"$ref": "#/$defs/ruling_report"},
    {"$ref": "#/$defs/error_report"}
  ],
  "$defs": {
    "rational": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
    "rational_list": {"type": "array", "items": {"$ref": "#/$defs/rational"}},
    "jet_list": {"type": "array", "items": {"type": "string"}},
    "count": {"type": "integer", "minimum": 0},
    "positive": {"type": "integer", "minimum": 1},
    "sign": {"type": "integer", "enum": [-1, 1]},
    "tool": {"type": "string", "const": "morin"},
    "version": {"type": "string"},
    "timing_ms": {"type": "number", "minimum": 0},
    "input": {
      "type": "object",
      "required": ["text", "m", "n", "order"],
      "additionalProperties": false,
      "properties": {
        "text": {"type": "string"},
        "m": {"$ref": "#/$defs/positive"},
        "n": {"$ref": "#/$defs/positive"},
        "order": {"$ref": "#/$defs/count"}
      }
    },
    "verdict": {
      "oneOf": [
        {
          "type": "object", "required": ["kind"], "additionalProperties": false,
          "properties": {"kind": {"const": "regular"}}
        },
        {
          "type": "object", "required": ["kind", "r"], "additionalProperties": false,
          "properties": {"kind": {"const": "morin"}, "r": {"$ref": "#/$defs/positive"}}
        },
        {
          "type": "object", "required": ["kind", "corank"], "additionalProperties": false,
          "properties": {"kind": {"const": "not_corank_one"}, "corank": {"$ref": "#/$defs/count"}}
        },
        {
          "type": "object", "required": ["kind", "j", "expected", "actual"], "additionalProperties": false,
          "properties": {
            "kind": {"const": "degenerate_rank"},
            "j": {"$ref": "#/$defs/count"},
            "expected": {"$ref": "#/$defs/count"},
            "actual": {"$ref": "#/$defs/count"}
          }
        },
        {
          "type": "object", "required": ["kind", "r_max"], "additionalProperties": false,
          "properties": {"kind": {"const": "flat_to_order"}, "r_max": {"$ref": "#/$defs/positive"}}
        },
        {
          "type": "object", "required": ["kind", "required_order"], "additionalProperties": false,
          "properties": {"kind": {"const": "truncation_insufficient"}, "required_order": {"$ref": "#/$defs/count"}}
        }
      ]
    },
    "chain": {
      "type": "object",
      "required": ["eta_lambda_values", "chain_ranks", "differentials"],
      "additionalProperties": false,
      "properties": {
        "eta_lambda_values": {"type": "array", "items": {"$ref": "#/$defs/rational_list"}},
        "chain_ranks": {"type": "array", "items": {"$ref": "#/$defs/count"}},
        "differentials": {
          "type": "array",
          "items": {"type": "array", "items": {"$ref": "#/$defs/rational_list"}}
        }
      }
    },
    "isotopy": {
      "type": "object",
      "required": ["r", "a", "case", "suspension", "class_count", "invariant", "d_sign", "gauge_note"],
      "additionalProperties": false,
      "properties": {
        "r": {"$ref": "#/$defs/positive"},
        "a": {"$ref": "#/$defs/positive"},
        "case": {"type": "integer", "enum": [0, 1, 2, 3]},
        "suspension": {"type": "boolean"},
        "class_count": {"type": "integer", "enum": [1, 2]},
        "invariant": {"type": "string", "enum": ["eps1", "eps2", "none"]},
        "d_sign": {"oneOf": [{"$ref": "#/$defs/sign"}, {"type": "null"}]},
        "gauge_note": {"type": "string"}
      }
    },
    "form_spec": {
      "type": "object",
      "required": ["r", "a", "extra", "eps1", "eps2"],
      "additionalProperties": false,
      "properties": {
        "r": {"$ref": "#/$defs/positive"},
        "a": {"$ref": "#/$defs/positive"},
        "extra": {"$ref": "#/$defs/count"},
        "eps1": {"$ref": "#/$defs/sign"},
        "eps2": {"$ref": "#/$defs/sign"}
      }
    },
    "step": {
      "type": "object",
      "required": ["side", "indices"],
      "additionalProperties": false,
      "properties": {
        "side": {"type": "string", "enum": ["source", "target"]},
        "indices": {"type": "array", "items": {"$ref": "#/$defs/positive"}}
      }
    },
    "classify_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "input", "r_max", "auto_order", "verdict", "chain", "isotopy"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "classify"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "input": {"$ref": "#/$defs/input"},
        "r_max": {"$ref": "#/$defs/positive"},
        "auto_order": {"type": "boolean"},
        "verdict": {"$ref": "#/$defs/verdict"},
        "chain": {"oneOf": [{"$ref": "#/$defs/chain"}, {"type": "null"}]},
        "isotopy": {"oneOf": [{"$ref": "#/$defs/isotopy"}, {"type": "null"}]}
      }
    },
    "fuzz_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "input", "r_max", "seed", "trials", "degree", "baseline", "results", "all_agree"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "fuzz"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "input": {"$ref": "#/$defs/input"},
        "r_max": {"$ref": "#/$defs/positive"},
        "seed": {"$ref": "#/$defs/count"},
        "trials": {"$ref": "#/$defs/count"},
        "degree": {"$ref": "#/$defs/positive"},
        "baseline": {"$ref": "#/$defs/verdict"},
        "results": {"type": "array", "items": {"$ref": "#/$defs/verdict"}},
        "all_agree": {"type": "boolean"}
      }
    },
    "form_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "spec", "germ"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"type": "string", "enum": ["normal-form", "isotopy-form"]},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "spec": {"$ref": "#/$defs/form_spec"},
        "germ": {"$ref": "#/$defs/input"}
      }
    },
    "d_invariant_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "input", "r", "d_sign", "isotopy"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "d-invariant"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "input": {"$ref": "#/$defs/input"},
        "r": {"$ref": "#/$defs/positive"},
        "d_sign": {"$ref": "#/$defs/sign"},
        "isotopy": {"$ref": "#/$defs/isotopy"}
      }
    },
    "table_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "r_max", "a_max", "cells"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "table"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "r_max": {"$ref": "#/$defs/positive"},
        "a_max": {"$ref": "#/$defs/positive"},
        "cells": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["r", "a", "case", "class_count", "invariant"],
            "additionalProperties": false,
            "properties": {
              "r": {"$ref": "#/$defs/positive"},
              "a": {"$ref": "#/$defs/positive"},
              "case": {"type": "integer", "enum": [0, 1, 2, 3]},
              "class_count": {"type": "integer", "enum": [1, 2]},
              "invariant": {"type": "string", "enum": ["eps1", "eps2", "none"]}
            }
          }
        }
      }
    },
    "witness_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "from", "to", "steps", "verified"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "witness"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "from": {"$ref": "#/$defs/form_spec"},
        "to": {"$ref": "#/$defs/form_spec"},
        "steps": {"type": "array", "items": {"$ref": "#/$defs/step"}},
        "verified": {"type": "boolean"}
      }
    },
    "ruling_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "input", "n", "order", "u", "sigma", "alpha", "alpha0",
                   "morin1_at_origin", "classifier", "eta_lambda", "alpha_delta", "delta0", "agree", "identity_holds"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "ruling"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "input": {"type": "string"},
        "n": {"$ref": "#/$defs/positive"},
        "order": {"$ref": "#/$defs/count"},
        "u": {"$ref": "#/$defs/jet_list"},
        "sigma": {"$ref": "#/$defs/jet_list"},
        "alpha": {"$ref": "#/$defs/jet_list"},
        "alpha0": {"$ref": "#/$defs/rational_list"},
        "morin1_at_origin": {"type": "boolean"},
        "classifier": {"$ref": "#/$defs/verdict"},
        "eta_lambda": {"$ref": "#/$defs/rational_list"},
        "alpha_delta": {"$ref": "#/$defs/rational_list"},
        "delta0": {"$ref": "#/$defs/rational"},
        "agree": {"type": "boolean"},
        "identity_holds": {"type": "boolean"}
      }
    },
    "error_report": {
      "type": "object",
      "required": ["tool", "version", "kind", "timing_ms", "error"],
      "additionalProperties": false,
      "properties": {
        "tool": {"$ref": "#/$defs/tool"},
        "version": {"$ref": "#/$defs/version"},
        "kind": {"const": "error"},
        "timing_ms": {"$ref": "#/$defs/timing_ms"},
        "error": {
          "type": "object",
          "required": ["type", "message"],
          "additionalProperties": false,
          "properties": {
            "type": {"type": "string"},
            "message": {"type": "string"},
            "line": {"$ref": "#/$defs/positive"},
            "column": {"$ref": "#/$defs/positive"},
            "component": {"$ref": "#/$defs/positive"},
            "required_order": {"$ref": "#/$defs/count"}
          }
        }
      }
    }
  }
}
)schema";
}

} // namespace morin

#endif
