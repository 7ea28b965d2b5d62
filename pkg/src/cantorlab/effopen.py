"""Effectively open sets presented by a cylinder enumeration.

An EffOpen is either a finite clopen set or a stateful generator yielding
one cylinder word per pull.  Pulling more fuel only ever grows the clopen
prefix, so its exact measure is a monotone lower bound on the true measure.
Upper bounds are *not* computable for enumerated sets; callers may attach an
asserted bound which cover constructions consume as a hypothesis.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterator, Optional

from .clopen import ClopenSet, check_word
from .measures import UNIFORM, MeasureSpec


class EffOpen:
    def __init__(
        self,
        generator: Iterator[str],
        assumed_measure_upper: Optional[Fraction] = None,
        descriptor: Optional[dict] = None,
    ):
        self._gen = generator
        self._pulled: list[str] = []
        self._exhausted = False
        self.assumed_measure_upper = (
            Fraction(assumed_measure_upper)
            if assumed_measure_upper is not None
            else None
        )
        self.descriptor = descriptor

    @classmethod
    def finite(cls, s: ClopenSet, assumed_measure_upper=None) -> "EffOpen":
        eff = cls(iter(s.words), assumed_measure_upper,
                  descriptor={"words": list(s.words)})
        eff.finite_set = s
        return eff

    finite_set: Optional[ClopenSet] = None

    @property
    def is_finite(self) -> bool:
        return self.finite_set is not None

    def pull(self, fuel: int) -> list[str]:
        """Cylinder words seen after up to ``fuel`` pulls (cached, monotone)."""
        while len(self._pulled) < fuel and not self._exhausted:
            try:
                self._pulled.append(check_word(next(self._gen)))
            except StopIteration:
                self._exhausted = True
        return self._pulled[: min(fuel, len(self._pulled))]

    def prefix(self, fuel: int) -> ClopenSet:
        return ClopenSet(self.pull(fuel))

    def prefix_with_measure(
        self, fuel: int, spec: MeasureSpec = UNIFORM
    ) -> tuple[ClopenSet, Fraction]:
        s = self.prefix(fuel)
        return s, s.measure(spec)

    def covered_at_fuel(self, point, fuel: int) -> str:
        """'yes' if the fuel-bounded prefix contains the point, else 'unknown'."""
        return "yes" if self.prefix(fuel).contains_point(point) else "unknown"


def eff_open_prefix(a: EffOpen, fuel: int, spec: MeasureSpec = UNIFORM):
    return a.prefix_with_measure(fuel, spec)


def covered_at_fuel(a: EffOpen, point, fuel: int) -> str:
    return a.covered_at_fuel(point, fuel)


def interval_cylinders(lo: Fraction, hi: Fraction) -> Iterator[str]:
    """Enumerate maximal dyadic cylinders inside the open interval (lo, hi).

    Identifying Cantor space with [0,1] by binary expansion, this presents
    the interval as an effectively open set; with irrational endpoints the
    enumeration never finishes, which is exactly what fuel bounds are for.
    Cylinders are yielded by increasing depth, skipping any already covered
    by an emitted parent.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo < hi <= 1:
        raise ValueError("need 0 <= lo < hi <= 1")
    queue = deque([("", Fraction(0), Fraction(1))])
    while queue:
        w, a, b = queue.popleft()
        if lo <= a and b <= hi:
            yield w  # maximal: its parent straddled a boundary
            continue
        if b <= lo or hi <= a:
            continue
        mid = (a + b) / 2
        queue.append((w + "0", a, mid))
        queue.append((w + "1", mid, b))
