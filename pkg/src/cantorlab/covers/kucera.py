"""Kučera-style covers for the left shift: shrink inside every interval.

Given a clopen a with mu(a) <= r < 1, the set of points all of whose tails
stay inside a is covered, within any interval x.Omega, by x.a — and that
copy has measure r * mu(I).  Iterating over the intervals of each stage
multiplies the bound by r every round.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..clopen import ClopenSet, check_word, word_key
from ..effopen import EffOpen
from ..errors import BudgetExceeded, PreconditionError
from .certificates import CoverCertificate, CoverStage


def resolve_open_input(a, r: Fraction, fuel: int | None
                       ) -> tuple[ClopenSet, bool]:
    """Clopen view of a cover input; True when only an assumed bound backs r.

    Finite clopen inputs are checked exactly against r.  Enumerated inputs
    are snapshotted at ``fuel`` pulls: the snapshot's measure is a lower
    bound on the true measure, so it must not already exceed r (that would
    refute the assertion), but nothing above the snapshot is verifiable.
    """
    if isinstance(a, ClopenSet):
        if a.measure() > r:
            raise PreconditionError(
                f"measure {a.measure()} exceeds the hypothesis bound {r}")
        return a, False
    if isinstance(a, EffOpen):
        if a.is_finite:
            return resolve_open_input(a.finite_set, r, fuel)
        snapshot = a.prefix(fuel if fuel is not None else 64)
        if a.assumed_measure_upper is not None and a.assumed_measure_upper > r:
            raise PreconditionError(
                f"asserted bound {a.assumed_measure_upper} exceeds r={r}")
        if snapshot.measure() > r:
            raise PreconditionError(
                f"enumerated prefix already has measure {snapshot.measure()} > {r}")
        return snapshot, True
    raise TypeError(f"expected ClopenSet or EffOpen, got {type(a).__name__}")


def kucera_step(a: ClopenSet, r: Fraction, x: str) -> ClopenSet:
    """The cover x.a of the shift-invariant core inside the interval x.Omega."""
    r = Fraction(r)
    if r >= 1:
        raise PreconditionError(f"need r < 1, got {r}")
    if a.measure() > r:
        raise PreconditionError(f"measure {a.measure()} exceeds r={r}")
    return a.prepend(check_word(x))


def kucera_iterate(a: Union[ClopenSet, EffOpen], r: Fraction, k: int,
                   fuel: int | None = None,
                   word_budget: int = 1 << 18) -> CoverCertificate:
    r = Fraction(r)
    if r >= 1:
        raise PreconditionError(f"need r < 1, got {r}")
    base, assumed = resolve_open_input(a, r, fuel)
    stages = [CoverStage(base, r, base.measure())]
    cur = base
    for j in range(k):
        if len(cur.words) * max(len(base.words), 1) > word_budget:
            raise BudgetExceeded(
                "stage would exceed the word budget",
                stage=j + 1, words=len(cur.words) * len(base.words),
                word_budget=word_budget)
        words = [x + w for x in cur.words for w in base.words]
        words.sort(key=word_key)
        cur = ClopenSet._from_canonical(tuple(words))
        stages.append(CoverStage(cur, r ** (j + 2), cur.measure()))
    params = {"r": r, "k": k}
    if assumed:
        params["fuel"] = fuel if fuel is not None else 64
    return CoverCertificate("kucera", params, stages, assumed=assumed)
