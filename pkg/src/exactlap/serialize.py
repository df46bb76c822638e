"""Wire formats: rational strings, input specs, and JSON reports.

Every number crossing a process boundary is an exact rational rendered as
"p/q" (or just "p" when the denominator is 1); parsers accept both forms
and plain integers.  Floats are rejected everywhere, by policy.

Graph, target, and weight descriptions come in three interchangeable
shapes on the command line: a compact shorthand ("z2", "tree3", "c5",
"delta", "distance"), an inline JSON object, or a path to a file holding
that JSON.  The JSON forms are the canonical ones and are what reports
echo back.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from typing import Mapping

from .errors import SpecFormatError
from .graphs import GraphOracle, family_oracle
from .operators import BallFunction, LambdaField, TargetFunction

_FRACTION_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def format_fraction(x: Fraction) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text) -> Fraction:
    """Parse "p/q", "p", or an integer into an exact rational.

    Floats are refused: accepting them would silently launder binary
    rounding error into the exact pipeline.
    """
    if isinstance(text, bool):
        raise SpecFormatError(f"expected a rational, got boolean {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise SpecFormatError(f"floats are not accepted, got {text!r}; write an exact 'p/q' string")
    if not isinstance(text, str) or not _FRACTION_RE.match(text.strip()):
        raise SpecFormatError(f"not a rational literal: {text!r}")
    s = text.strip()
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise SpecFormatError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def _load_spec_text(text: str, what: str) -> dict:
    """Interpret a CLI value as inline JSON or a JSON file path."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecFormatError(f"inline {what} spec is not valid JSON: {e}") from None
    elif os.path.exists(text):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise SpecFormatError(f"{what} spec file {text!r} is not valid JSON: {e}") from None
    else:
        raise SpecFormatError(f"unrecognized {what} spec {text!r}: not a shorthand, inline JSON, or existing file")
    if not isinstance(obj, dict):
        raise SpecFormatError(f"{what} spec must be a JSON object, got {type(obj).__name__}")
    return obj


_GRAPH_SHORTHAND = re.compile(r"^(z|z2|z3|tree(\d+)|ladder(\d*)|free(\d+)|c(\d+)|p(\d+))$")


def graph_spec_from_text(text: str) -> dict:
    """Turn a CLI graph argument into a canonical family spec dict.

    Shorthands: z, z2, z3 (line and grids), treeD, ladder / ladderW,
    freeR, cK (cycle), pK (path).  Anything else must be inline JSON or a
    file path.
    """
    m = _GRAPH_SHORTHAND.match(text.strip())
    if m:
        s = m.group(1)
        if s == "z":
            return {"family": "line"}
        if s in ("z2", "z3"):
            return {"family": "grid", "dims": int(s[1])}
        if s.startswith("tree"):
            return {"family": "tree", "degree": int(m.group(2))}
        if s.startswith("ladder"):
            return {"family": "ladder", "width": int(m.group(3)) if m.group(3) else 2}
        if s.startswith("free"):
            return {"family": "free_group", "rank": int(m.group(4))}
        if s.startswith("c"):
            return {"family": "cycle", "size": int(m.group(5))}
        return {"family": "path", "size": int(m.group(6))}
    return _load_spec_text(text, "graph")


def graph_from_text(text: str) -> GraphOracle:
    return family_oracle(graph_spec_from_text(text))


def target_from_json(spec: dict) -> TargetFunction:
    """Build a target from its canonical JSON description.

    Kinds: {"kind":"delta"}; {"kind":"zero"}; {"kind":"geometric"} (value
    2^-d at distance d); {"kind":"radial","coeffs":[...]} (zero beyond the
    list); {"kind":"sparse","entries":{"id":"p/q",...}} keyed by vertex id.
    """
    kind = spec.get("kind")
    if kind == "delta":
        return TargetFunction.delta()
    if kind == "zero":
        return TargetFunction.radial(())
    if kind == "geometric":
        return TargetFunction.radial_fn(lambda d: Fraction(1, 2**d))
    if kind == "radial":
        coeffs = spec.get("coeffs")
        if not isinstance(coeffs, list):
            raise SpecFormatError("radial target requires a 'coeffs' list")
        return TargetFunction.radial([parse_fraction(c) for c in coeffs])
    if kind == "sparse":
        entries = spec.get("entries")
        if not isinstance(entries, dict):
            raise SpecFormatError("sparse target requires an 'entries' object keyed by vertex id")
        clean = {}
        for k, v in entries.items():
            if not str(k).lstrip("-").isdigit():
                raise SpecFormatError(f"sparse target key {k!r} is not a vertex id")
            clean[int(k)] = parse_fraction(v)
        return TargetFunction.sparse(clean)
    raise SpecFormatError(f"unknown target kind {kind!r}")


def target_from_text(text: str) -> TargetFunction:
    """CLI target argument: shorthand, inline JSON, or file path.

    Shorthands: delta, zero, geometric, radial:c0,c1,... with rational
    coefficients.
    """
    s = text.strip()
    if s in ("delta", "zero", "geometric"):
        return target_from_json({"kind": s})
    if s.startswith("radial:"):
        parts = [p for p in s[len("radial:") :].split(",") if p]
        return TargetFunction.radial([parse_fraction(p) for p in parts])
    return target_from_json(_load_spec_text(text, "target"))


def lambda_from_json(spec: dict) -> LambdaField:
    """Build a diagonal weight from its canonical JSON description.

    Kinds: {"kind":"zero"}; {"kind":"constant","value":"p/q"};
    {"kind":"distance"}; {"kind":"map","entries":{"id":"p/q",...}}.
    """
    kind = spec.get("kind")
    if kind == "zero":
        return LambdaField.zero()
    if kind == "constant":
        if "value" not in spec:
            raise SpecFormatError("constant weight requires a 'value'")
        value = parse_fraction(spec["value"])
        if value < 0:
            raise SpecFormatError(f"weight must be nonnegative, got {value}")
        return LambdaField.constant(value)
    if kind == "distance":
        return LambdaField.distance()
    if kind == "map":
        entries = spec.get("entries")
        if not isinstance(entries, dict):
            raise SpecFormatError("map weight requires an 'entries' object keyed by vertex id")
        clean = {}
        for k, v in entries.items():
            if not str(k).isdigit():
                raise SpecFormatError(f"map weight key {k!r} is not a vertex id")
            value = parse_fraction(v)
            if value < 0:
                raise SpecFormatError(f"weight must be nonnegative, got {value} at vertex {k}")
            clean[int(k)] = value
        return LambdaField.from_map(clean)
    raise SpecFormatError(f"unknown weight kind {kind!r}")


def lambda_from_text(text: str) -> LambdaField:
    """CLI weight argument: zero | distance | a rational constant | JSON."""
    s = text.strip()
    if s in ("zero", "0"):
        return LambdaField.zero()
    if s in ("distance", "dist"):
        return LambdaField.distance()
    if _FRACTION_RE.match(s):
        value = parse_fraction(s)
        if value < 0:
            raise SpecFormatError(f"weight must be nonnegative, got {value}")
        return LambdaField.constant(value)
    return lambda_from_json(_load_spec_text(text, "weight"))


def describe_lambda(lam: LambdaField) -> str:
    if lam.kind == "constant":
        return f"constant {format_fraction(lam.data)}"
    return lam.kind


def solution_to_json(fn: BallFunction) -> dict[str, str]:
    """Solution values keyed by the family's native vertex labels, in ball order."""
    return {label: format_fraction(x) for label, x in fn.label_items()}


def solution_from_json(oracle: GraphOracle, values: Mapping[str, str]) -> dict[str, Fraction]:
    """Parse a solution dict back to exact rationals, keyed by label."""
    return {str(k): parse_fraction(v) for k, v in values.items()}


def ball_function_from_json(ball, values: Mapping[str, str]) -> BallFunction:
    """Rebuild a function on a ball from label-keyed JSON values.

    Labels are injective within every built-in family, so the mapping back
    to ids is unambiguous; missing or extra labels are an error.
    """
    parsed = solution_from_json(ball.oracle, values)
    out = []
    for v in ball.vertices:
        label = ball.oracle.label(v)
        if label not in parsed:
            raise SpecFormatError(f"solution is missing vertex {label!r}")
        out.append(parsed[label])
    if len(parsed) != len(out):
        extra = sorted(set(parsed) - {ball.oracle.label(v) for v in ball.vertices})
        raise SpecFormatError(f"solution has labels outside the ball: {extra}")
    return BallFunction(ball, tuple(out))


def dump_report(report: dict) -> str:
    """Canonical textual form of a JSON report: stable key order, trailing newline."""
    return json.dumps(report, indent=2) + "\n"
