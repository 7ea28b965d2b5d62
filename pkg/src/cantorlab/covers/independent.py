"""Covers built from independent shifted copies of an interval.

For two-sided sequences (represented through the zig-zag embedding) the
shift is invertible, so mu(I ∩ T^-n(A)) = mu(A ∩ T^n(I)).  Picking shifts
whose translated copies of the base interval are independent, a Chebyshev
bound on the frequency of hits yields an effectively computable k such that
the average of mu(A ∩ T^(iN) I) over i <= k is at most s * mu(I); the
minimum sits under the average, so intersecting the pulled-back copies of A
drives the exact measure below s * mu(I) within at most k steps.  The
construction verifies the exact bound after every step and stops as soon as
it holds (k is the guarantee, not the schedule), keeping everything in the
sparse constraint form so far-apart shifts stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Union

from ..clopen import ClopenSet
from ..embedded import EmbeddedClopen
from ..errors import BudgetExceeded, PreconditionError
from ..transforms import bidirectional_span
from .certificates import CoverCertificate, CoverStage
from .prefixes import frac


def lemma1_k(d: Fraction, r: Fraction, s: Fraction, epsilon: Fraction) -> int:
    """Minimal k with (d+eps)*r + d(1-d)/(k*eps^2) <= s*d, in exact rationals.

    With k independent events of probability d, Chebyshev bounds the mass
    where their frequency strays past d+eps by d(1-d)/(k eps^2); any set of
    measure at most r then meets the copies with average measure <= s*d.
    """
    d, r, s, epsilon = map(Fraction, (d, r, s, epsilon))
    if not 0 < d < 1:
        raise PreconditionError(f"need 0 < d < 1, got {d}")
    if not 0 <= r < s < 1:
        raise PreconditionError(f"need 0 <= r < s < 1, got r={r}, s={s}")
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    slack = s * d - (d + epsilon) * r
    if slack <= 0:
        raise PreconditionError(
            f"(d+epsilon)*r = {(d + epsilon) * r} is not below s*d = {s * d}; "
            "choose a smaller epsilon")
    need = d * (1 - d) / (epsilon * epsilon * slack)
    k = -((-need.numerator) // need.denominator)  # ceil
    return max(k, 1)


def _default_epsilon(d: Fraction, r: Fraction, s: Fraction) -> Fraction:
    # (d + d(s-r)/2) * r < s*d reduces to r(s-r)/2 < s-r, true for r < 2
    return d * (s - r) / 2


def _as_embedded(a) -> EmbeddedClopen:
    if isinstance(a, EmbeddedClopen):
        return a
    if isinstance(a, ClopenSet):
        return EmbeddedClopen.from_clopen(a)
    raise TypeError(f"expected ClopenSet or EmbeddedClopen, got {type(a).__name__}")


class _ShiftLoop:
    """Shared certified-intersection loop for both shift-cover variants."""

    def __init__(self, a: EmbeddedClopen, base: EmbeddedClopen, s: Fraction,
                 term_budget: int):
        self.a = a
        self.base = base
        self.cur = base
        self.bound = s * base.measure()
        self.identities: list[dict] = []
        self.used: list[int] = []
        self.term_budget = term_budget

    def absorb(self, n: int) -> bool:
        """Intersect with the pull-back of a along shift n; True when done."""
        pulled = self.a.shifted(n)
        image = self.base.shifted(-n)
        lhs = self.base.intersect(pulled, self.term_budget).measure()
        rhs = self.a.intersect(image, self.term_budget).measure()
        if lhs != rhs:  # invertibility identity; failure means a broken embed
            raise AssertionError(
                f"shift-invariance identity failed at n={n}: {lhs} != {rhs}")
        self.identities.append({"n": n, "value": frac(lhs)})
        self.used.append(n)
        self.cur = self.cur.intersect(pulled, self.term_budget)
        return self.cur.measure() <= self.bound

    def stage(self) -> CoverStage:
        return CoverStage(self.cur, self.bound, self.cur.measure(),
                          info={"shifts": self.used,
                                "identities": self.identities})


def bidirectional_cover(a, r: Fraction, s: Fraction, x: dict[int, int],
                        term_budget: int = 1 << 12) -> CoverCertificate:
    """Certified cover of the all-shifts-stay-inside core within the
    embedded interval given by the finite assignment x."""
    r, s = Fraction(r), Fraction(s)
    if not r < s < 1:
        raise PreconditionError(f"need r < s < 1, got r={r}, s={s}")
    emb = _as_embedded(a)
    if emb.measure() > r:
        raise PreconditionError(f"measure {emb.measure()} exceeds r={r}")
    base = EmbeddedClopen.from_assignments(x)
    params = {"r": r, "s": s, "x": {str(i): b for i, b in sorted(x.items())}}
    if emb.is_empty:
        stage = CoverStage(emb, Fraction(0), Fraction(0))
        return CoverCertificate("bidirectional", params, [stage])
    span = bidirectional_span(x)
    step = span + 1
    d = base.measure()
    epsilon = _default_epsilon(d, r, s)
    k = lemma1_k(d, r, s, epsilon)
    loop = _ShiftLoop(emb, base, s, term_budget)
    for i in range(1, k + 1):
        if loop.absorb(i * step):
            params.update({"k": k, "N": step, "epsilon": epsilon,
                           "steps_used": i})
            return CoverCertificate("bidirectional", params, [loop.stage()])
    raise AssertionError("average bound failed past the guaranteed k")


def enumerable_shift_cover(a, r: Fraction, s: Fraction,
                           shifts: Union[Iterable[int], Iterator[int]],
                           x: dict[int, int],
                           term_budget: int = 1 << 12) -> CoverCertificate:
    """Like bidirectional_cover but drawing shifts from a caller-supplied
    enumeration, keeping only shifts independent of all kept ones."""
    r, s = Fraction(r), Fraction(s)
    if not r < s < 1:
        raise PreconditionError(f"need r < s < 1, got r={r}, s={s}")
    emb = _as_embedded(a)
    if emb.measure() > r:
        raise PreconditionError(f"measure {emb.measure()} exceeds r={r}")
    base = EmbeddedClopen.from_assignments(x)
    params = {"r": r, "s": s, "x": {str(i): b for i, b in sorted(x.items())}}
    if emb.is_empty:
        stage = CoverStage(emb, Fraction(0), Fraction(0))
        return CoverCertificate("enumerable_shift", params, [stage])
    span = bidirectional_span(x)
    d = base.measure()
    epsilon = _default_epsilon(d, r, s)
    k = lemma1_k(d, r, s, epsilon)
    loop = _ShiftLoop(emb, base, s, term_budget)
    kept: list[int] = []
    skipped = 0
    for n in shifts:
        if any(abs(n - m) <= span for m in kept) or abs(n) <= span:
            skipped += 1
            continue
        kept.append(n)
        if loop.absorb(n):
            params.update({"k": k, "epsilon": epsilon, "skipped": skipped,
                           "steps_used": len(kept)})
            return CoverCertificate("enumerable_shift", params, [loop.stage()])
        if len(kept) >= k:
            raise AssertionError("average bound failed past the guaranteed k")
    raise BudgetExceeded(
        "shift enumeration exhausted before the bound certified",
        kept=len(kept), needed=k, skipped=skipped)


def admissible_shifts(shifts: Iterable[int], span: int, count: int) -> list[int]:
    """First ``count`` shifts kept by the independence rule (for inspection)."""
    kept: list[int] = []
    for n in shifts:
        if any(abs(n - m) <= span for m in kept) or abs(n) <= span:
            continue
        kept.append(n)
        if len(kept) == count:
            break
    return kept
