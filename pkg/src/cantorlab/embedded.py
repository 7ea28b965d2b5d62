"""Sparse clopen sets over the zig-zag embedding of two-sided sequences.

A union of bit-constraint cylinders, each a finite map from embedded
positions to bits.  Canonical word form explodes exponentially in the
largest constrained position, so the shift covers keep their sets in this
sparse form: shifting is constraint relabeling, intersection is pairwise
merging, and the exact uniform measure comes from a Shannon expansion over
the constrained positions only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .clopen import EMPTY, FULL, ClopenSet
from .errors import BudgetExceeded
from .transforms import bit_constraints_clopen, zigzag, zigzag_inv

Term = tuple[tuple[int, int], ...]  # sorted ((position, bit), ...)


def _term(constraints: Mapping[int, int]) -> Term:
    for pos, bit in constraints.items():
        if pos < 0 or bit not in (0, 1):
            raise ValueError(f"bad constraint {pos}:{bit}")
    return tuple(sorted(constraints.items()))


def _merge(t1: Term, t2: Term) -> Term | None:
    """Conjunction of two terms, or None when they conflict."""
    merged = dict(t1)
    for pos, bit in t2:
        if merged.setdefault(pos, bit) != bit:
            return None
    return tuple(sorted(merged.items()))


class EmbeddedClopen:
    """Union of sparse bit-constraint cylinders; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Mapping[int, int]] = ()):
        cleaned = sorted({_term(t) for t in terms})
        # absorption: a term implied by a weaker one is redundant
        kept = [t for t in cleaned
                if not any(set(o) < set(t) for o in cleaned)]
        if any(t == () for t in kept):
            kept = [()]
        object.__setattr__(self, "terms", tuple(kept))

    def __setattr__(self, name, value):
        raise AttributeError("EmbeddedClopen is immutable")

    @classmethod
    def _wrap(cls, terms: tuple[Term, ...]) -> "EmbeddedClopen":
        self = cls.__new__(cls)
        object.__setattr__(self, "terms", terms)
        return self

    @classmethod
    def from_assignments(cls, assignments: Mapping[int, int]) -> "EmbeddedClopen":
        """Single cylinder from a finite two-sided assignment map."""
        return cls([{zigzag(i): b for i, b in assignments.items()}])

    @classmethod
    def from_clopen(cls, s: ClopenSet) -> "EmbeddedClopen":
        return cls([{j: int(w[j]) for j in range(len(w))} for w in s.words])

    def __eq__(self, other):
        return isinstance(other, EmbeddedClopen) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"EmbeddedClopen({[dict(t) for t in self.terms]!r})"

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def shifted(self, n: int) -> "EmbeddedClopen":
        """Relabel every constraint from two-sided index i to i + n.

        This is exactly the preimage under the two-sided shift by n, read
        through the embedding.
        """
        return EmbeddedClopen(
            [{zigzag(zigzag_inv(pos) + n): bit for pos, bit in t}
             for t in self.terms])

    def intersect(self, other: "EmbeddedClopen",
                  term_budget: int = 1 << 12) -> "EmbeddedClopen":
        if len(self.terms) * len(other.terms) > term_budget:
            raise BudgetExceeded(
                "sparse intersection exceeds the term budget",
                terms=len(self.terms) * len(other.terms),
                term_budget=term_budget)
        merged = []
        for t1 in self.terms:
            for t2 in other.terms:
                m = _merge(t1, t2)
                if m is not None:
                    merged.append(dict(m))
        return EmbeddedClopen(merged)

    def measure(self, spec=None) -> Fraction:
        """Exact uniform measure by Shannon expansion on constrained bits."""
        from .measures import UNIFORM

        if spec is not None and spec != UNIFORM:
            raise ValueError("sparse embedded sets carry the uniform measure only")
        return _union_measure(list(self.terms))

    def contains_point(self, point) -> bool:
        return any(all(point.bit(pos) == bit for pos, bit in t)
                   for t in self.terms)

    def to_clopen(self, word_budget: int = 1 << 16) -> ClopenSet:
        """Materialize as a canonical word-form set (small instances only)."""
        if self.is_empty:
            return EMPTY
        out = EMPTY
        for t in self.terms:
            out = out.union(bit_constraints_clopen(dict(t), word_budget))
            if out.is_full:
                return FULL
        return out

    def to_json(self) -> dict:
        return {"constraints": [{str(pos): bit for pos, bit in t}
                                for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "EmbeddedClopen":
        return cls([{int(pos): int(bit) for pos, bit in t.items()}
                    for t in data["constraints"]])


def _union_measure(terms: list[Term]) -> Fraction:
    if not terms:
        return Fraction(0)
    if any(t == () for t in terms):
        return Fraction(1)
    pos = terms[0][0][0]
    split: dict[int, list[Term]] = {0: [], 1: []}
    for branch in (0, 1):
        for t in terms:
            kept = tuple((p, b) for p, b in t if p != pos)
            constrained = dict(t).get(pos)
            if constrained is None or constrained == branch:
                split[branch].append(kept)
    return (_union_measure(split[0]) + _union_measure(split[1])) / 2
