"""Computable measures on Cantor space, exact on cylinders.

Three kinds: the uniform coin-flipping measure, Bernoulli(p) where p is the
probability of bit 1 (the convention used throughout the CLI schema), and a
two-state Markov measure given by an initial distribution and transition
rows.  All arithmetic is over fractions.Fraction; additivity
mu(w0) + mu(w1) = mu(w) holds exactly by construction.
"""

from __future__ import annotations

from fractions import Fraction

from .clopen import ClopenSet
from .errors import SchemaError

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class MeasureSpec:
    kind = "abstract"

    def word_measure(self, w: str) -> Fraction:
        raise NotImplementedError

    def clopen_measure(self, s: ClopenSet) -> Fraction:
        return sum((self.word_measure(w) for w in s.words), ZERO)

    def to_json(self) -> dict:
        raise NotImplementedError


class UniformMeasure(MeasureSpec):
    kind = "uniform"

    def word_measure(self, w: str) -> Fraction:
        return Fraction(1, 1 << len(w))

    def clopen_measure(self, s: ClopenSet) -> Fraction:
        num, d = s.dyadic_measure()
        return Fraction(num, 1 << d)

    def to_json(self):
        return {"kind": "uniform"}

    def __repr__(self):
        return "UniformMeasure()"

    def __eq__(self, other):
        return isinstance(other, UniformMeasure)

    def __hash__(self):
        return hash("uniform")


class BernoulliMeasure(MeasureSpec):
    """Product measure with P(bit = 1) = p at every position."""

    kind = "bernoulli"

    def __init__(self, p: Fraction):
        p = Fraction(p)
        if not ZERO < p < ONE:
            raise SchemaError(f"bernoulli parameter must lie in (0,1): {p}")
        self.p = p
        self.q = ONE - p

    def word_measure(self, w: str) -> Fraction:
        ones = w.count("1")
        return self.p**ones * self.q ** (len(w) - ones)

    def to_json(self):
        return {"kind": "bernoulli", "p": f"{self.p.numerator}/{self.p.denominator}"}

    def __repr__(self):
        return f"BernoulliMeasure({self.p})"

    def __eq__(self, other):
        return isinstance(other, BernoulliMeasure) and self.p == other.p

    def __hash__(self):
        return hash(("bernoulli", self.p))


class MarkovMeasure(MeasureSpec):
    """Two-state Markov chain measure; rows and the initial law sum to 1."""

    kind = "markov"

    def __init__(self, initial, rows):
        self.initial = tuple(Fraction(x) for x in initial)
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if len(self.initial) != 2 or sum(self.initial) != ONE:
            raise SchemaError("initial distribution must be two entries summing to 1")
        if len(self.rows) != 2 or any(
            len(r) != 2 or sum(r) != ONE for r in self.rows
        ):
            raise SchemaError("transition rows must be 2x2 with rows summing to 1")
        if any(x < 0 for x in self.initial) or any(
            x < 0 for row in self.rows for x in row
        ):
            raise SchemaError("markov parameters must be nonnegative")

    def word_measure(self, w: str) -> Fraction:
        if not w:
            return ONE
        m = self.initial[int(w[0])]
        for prev, cur in zip(w, w[1:]):
            m *= self.rows[int(prev)][int(cur)]
        return m

    def to_json(self):
        frac = lambda x: f"{x.numerator}/{x.denominator}"
        return {
            "kind": "markov",
            "initial": [frac(x) for x in self.initial],
            "rows": [[frac(x) for x in row] for row in self.rows],
        }

    def __repr__(self):
        return f"MarkovMeasure({self.initial}, {self.rows})"

    def __eq__(self, other):
        return (
            isinstance(other, MarkovMeasure)
            and self.initial == other.initial
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(("markov", self.initial, self.rows))


UNIFORM = UniformMeasure()


def measure(s: ClopenSet, spec: MeasureSpec = UNIFORM) -> Fraction:
    return spec.clopen_measure(s)
