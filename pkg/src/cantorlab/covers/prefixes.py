"""Covers against finite bit changes and against prefix addition.

Both constructions intersect sections of the input set.  The finite-change
cover intersects the sections over all words of one length (the minimum is
at most the average, which equals mu(a) exactly under the uniform measure).
The prefix-addition cover intersects sections over a family z_1, ..., z_m
chosen so the translated intervals z_i.x.Omega are disjoint and cover the
space up to measure delta; a density argument then certifies the bound
s * mu(I) for any s strictly between mu(a) and 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..clopen import EMPTY, FULL, ClopenSet, check_word, cylinder, word_key
from ..errors import BudgetExceeded, PreconditionError
from .. import _kernels as kernels
from .certificates import CoverCertificate, CoverStage

_MASK_DEPTH_LIMIT = 16


@lru_cache(maxsize=8192)
def common_section(a: ClopenSet, length: int) -> ClopenSet:
    """Intersection over all words y of a given length of a.section(y)."""
    if length == 0 or a.is_full or a.is_empty:
        return a
    d = a.max_len
    if length >= d:
        # every section is Omega or empty; a proper set misses some leaf
        return EMPTY
    if d <= _MASK_DEPTH_LIMIT:
        mask = kernels.sections_common_and(a.leaf_mask(d), d, length)
        return ClopenSet.from_leaf_mask(mask, d - length)
    out = a.section("0" * length)
    v = 1
    while v < (1 << length) and not out.is_empty:
        out = out.intersect(a.section(format(v, f"0{length}b")))
        v += 1
    return out


def finite_change_cover(a: ClopenSet, x: str) -> ClopenSet:
    """Cover, inside x.Omega, of the points that stay in a under any finite
    change of bits; its measure is at most mu(a) * 2^-|x| exactly."""
    check_word(x)
    if a.measure() == 1:
        raise PreconditionError("need measure(a) < 1")
    return common_section(a, len(x)).prepend(x)


def prefix_family(x: str, delta: Fraction,
                  word_budget: int = 1 << 18) -> list[str]:
    """Words z_1, ..., z_m with the z_i.x.Omega disjoint and co-covering.

    Round by round, every interval still uncovered receives a copy of x,
    scaling the uncovered mass by exactly (1 - 2^-|x|); rounds repeat until
    the remainder is at most delta.  Within a round the new words come in
    canonical (length, bits) order, making the family reproducible.
    """
    check_word(x)
    if not x:
        raise PreconditionError("x must be nonempty")
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise PreconditionError(f"delta must lie in (0,1): {delta}")
    comp_words = cylinder(x).complement().words
    shrink = 1 - Fraction(1, 1 << len(x))
    family: list[str] = []
    uncovered = FULL
    remainder = Fraction(1)
    while remainder > delta:
        zs = uncovered.words
        if len(zs) * len(comp_words) > word_budget:
            raise BudgetExceeded(
                "prefix family grew past the word budget",
                family=len(family), remainder=frac(remainder),
                word_budget=word_budget)
        family.extend(zs)
        nxt = [z + c for z in zs for c in comp_words]
        nxt.sort(key=word_key)
        uncovered = ClopenSet._from_canonical(tuple(nxt))
        remainder *= shrink
    return family


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def prefix_addition_cover(a: ClopenSet, r: Fraction, s: Fraction,
                          x: str) -> CoverCertificate:
    """Certified cover, inside x.Omega, of the points omega with
    z.omega in a for every word z."""
    r, s = Fraction(r), Fraction(s)
    check_word(x)
    if not x:
        raise PreconditionError("x must be nonempty")
    if not r < s < 1:
        raise PreconditionError(f"need r < s < 1, got r={r}, s={s}")
    if a.measure() > r:
        raise PreconditionError(f"measure {a.measure()} exceeds r={r}")
    if a.is_empty:
        stage = CoverStage(EMPTY, Fraction(0), Fraction(0))
        return CoverCertificate("prefix_addition",
                                {"r": r, "s": s, "x": x}, [stage])
    delta = (s - r) / (2 * (1 + r))
    family = prefix_family(x, delta)
    cover = cylinder(x)
    for z in family:
        cover = cover.intersect(a.section(z))
        if cover.is_empty:
            break
    bound = s * Fraction(1, 1 << len(x))
    stage = CoverStage(cover, bound, cover.measure(),
                       info={"family": family, "delta": frac(delta)})
    return CoverCertificate("prefix_addition",
                            {"r": r, "s": s, "x": x}, [stage])
