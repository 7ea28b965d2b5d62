"""JSON wire schema shared by the CLI and certificate round-trips.

Rationals always travel as "num/den" strings so exactness survives the
wire; decimal renderings appear only in human-readable report columns.
Emission is canonical (sorted keys, compact separators, trailing newline):
identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .clopen import ClopenSet
from .effopen import EffOpen, interval_cylinders
from .errors import SchemaError
from .measures import UNIFORM, BernoulliMeasure, MarkovMeasure, MeasureSpec
from .points import ExplicitPoint, PeriodicPoint, Point, SeededPoint


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    try:
        if isinstance(s, str) and "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as e:
        raise SchemaError(f"bad rational {s!r}: {e}") from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def clopen_to_json(s: ClopenSet) -> list[str]:
    return list(s.words)


def clopen_from_json(data) -> ClopenSet:
    if not isinstance(data, list) or not all(isinstance(w, str) for w in data):
        raise SchemaError(f"a clopen set is a JSON array of words, got {data!r}")
    try:
        return ClopenSet(data)
    except ValueError as e:
        raise SchemaError(str(e)) from None


def measure_from_json(data) -> MeasureSpec:
    if data is None:
        return UNIFORM
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError(f"bad measure descriptor: {data!r}")
    kind = data["kind"]
    if kind == "uniform":
        return UNIFORM
    if kind == "bernoulli":
        return BernoulliMeasure(parse_frac(data["p"]))
    if kind == "markov":
        return MarkovMeasure(
            [parse_frac(x) for x in data["initial"]],
            [[parse_frac(x) for x in row] for row in data["rows"]],
        )
    raise SchemaError(f"unknown measure kind {kind!r}")


def point_from_json(data) -> Point:
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError(f"bad point descriptor: {data!r}")
    kind = data["kind"]
    try:
        if kind == "periodic":
            return PeriodicPoint(data["preamble"], data["cycle"])
        if kind == "explicit":
            return ExplicitPoint(data.get("prefix", ""), data.get("fill", 0))
        if kind == "seeded":
            return SeededPoint(int(data["seed"]))
    except (KeyError, ValueError) as e:
        raise SchemaError(f"bad point descriptor {data!r}: {e}") from None
    raise SchemaError(f"unknown point kind {kind!r}")


def effopen_from_json(data) -> EffOpen:
    """Inline word array, or a named builtin generator with parameters."""
    if isinstance(data, list):
        return EffOpen.finite(clopen_from_json(data))
    if not isinstance(data, dict):
        raise SchemaError(f"bad effectively-open descriptor: {data!r}")
    bound = parse_frac(data["assumed_measure_upper"]) if "assumed_measure_upper" in data else None
    if "words" in data:
        eff = EffOpen.finite(clopen_from_json(data["words"]), bound)
        return eff
    gen = data.get("generator")
    if gen == "interval":
        return EffOpen(
            interval_cylinders(parse_frac(data["lo"]), parse_frac(data["hi"])),
            bound,
            descriptor=data,
        )
    raise SchemaError(f"unknown effectively-open generator {gen!r}")
