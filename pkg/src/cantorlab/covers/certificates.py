"""Cover certificates: a constructed cover plus its proven measure bound.

A certificate is the artifact's unit of evidence.  Each stage holds an
explicit clopen set, the bound claimed for it, and the exact measure that
was verified against the bound.  ``status`` is "verified" when every stage
was certified by exact arithmetic, or "assumed" when the input set was an
enumeration seen only up to some fuel, in which case the bound rests on the
caller's asserted measure upper bound.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from ..clopen import ClopenSet
from ..embedded import EmbeddedClopen
from ..errors import SchemaError
from ..measures import UNIFORM, MeasureSpec
from ..serialize import (
    canonical_json,
    clopen_from_json,
    clopen_to_json,
    frac_str,
    measure_from_json,
    parse_frac,
)


def _content_to_json(content):
    if isinstance(content, EmbeddedClopen):
        return content.to_json()
    return clopen_to_json(content)


def _content_from_json(data):
    if isinstance(data, dict) and "constraints" in data:
        return EmbeddedClopen.from_json(data)
    return clopen_from_json(data)


class CoverStage:
    def __init__(self, content, bound: Fraction,
                 measure: Optional[Fraction] = None, info: Optional[dict] = None):
        self.content = content  # ClopenSet or EmbeddedClopen
        self.bound = Fraction(bound)
        self.measure = None if measure is None else Fraction(measure)
        self.info = dict(info or {})

    @property
    def holds(self) -> bool:
        return self.measure is not None and self.measure <= self.bound

    def to_json(self) -> dict:
        d = {
            "set": _content_to_json(self.content),
            "bound": frac_str(self.bound),
            "measure": None if self.measure is None else frac_str(self.measure),
        }
        if self.info:
            d["info"] = self.info
        return d

    @classmethod
    def from_json(cls, d: dict) -> "CoverStage":
        return cls(
            _content_from_json(d["set"]),
            parse_frac(d["bound"]),
            None if d.get("measure") is None else parse_frac(d["measure"]),
            d.get("info"),
        )


class CoverCertificate:
    def __init__(self, construction: str, params: dict,
                 stages: Sequence[CoverStage],
                 measure_spec: MeasureSpec = UNIFORM,
                 assumed: bool = False):
        self.construction = construction
        self.params = dict(params)
        self.stages = list(stages)
        self.measure_spec = measure_spec
        self.assumed = assumed
        if len(self.stages) > 1:
            bounds = [st.bound for st in self.stages]
            if any(b2 >= b1 for b1, b2 in zip(bounds, bounds[1:])):
                raise ValueError(f"iterated bounds must strictly decrease: {bounds}")

    @property
    def status(self) -> str:
        return "assumed" if self.assumed else "verified"

    @property
    def verified(self) -> bool:
        return not self.assumed and all(st.holds for st in self.stages)

    def to_json(self) -> dict:
        params = {}
        for key, value in sorted(self.params.items()):
            params[key] = frac_str(value) if isinstance(value, Fraction) else value
        return {
            "construction": self.construction,
            "params": params,
            "measure": self.measure_spec.to_json(),
            "stages": [st.to_json() for st in self.stages],
            "status": self.status,
            "verified": self.verified,
        }

    def emit(self) -> str:
        return canonical_json(self.to_json())

    @classmethod
    def from_json(cls, d: dict) -> "CoverCertificate":
        try:
            cert = cls(
                d["construction"],
                d.get("params", {}),
                [CoverStage.from_json(st) for st in d["stages"]],
                measure_from_json(d.get("measure")),
                assumed=d.get("status") == "assumed",
            )
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad certificate: {e}") from None
        return cert

    def reverify(self) -> bool:
        """Recompute every stage measure from its set alone and recheck."""
        for st in self.stages:
            recomputed = st.content.measure(self.measure_spec)
            if st.measure is not None and recomputed != st.measure:
                return False
            if not self.assumed and recomputed > st.bound:
                return False
        return True
