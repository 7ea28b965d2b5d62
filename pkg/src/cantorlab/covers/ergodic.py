"""Tail-average covers for arbitrary exact measure-preserving transforms.

Inside an interval I, the points whose whole forward orbit stays in a are
covered by I ∩ ⋂_{i<=n} T^-i(a) for every n.  The measure of that
intersection is at most the average over i of mu(I ∩ T^-i(a)); by the mean
ergodic theorem this average tends to mu(a)mu(I) for ergodic T, so some n
pushes it under r*mu(I).  The search evaluates that average exactly (all
sets here are clopen) on a doubling schedule and certifies the final
measure; the L2 distance of the orbit-average function from its mean is
computed exactly as well and is how slow mixing shows up in diagnostics.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterator

from ..clopen import ClopenSet, check_word, cylinder, word_key
from ..errors import BudgetExceeded, PreconditionError
from ..measures import UNIFORM, MeasureSpec
from ..serialize import canonical_json
from ..transforms import ClopenTransform, Transform, check_measure_preserving, preimage_clopen
from .certificates import CoverCertificate, CoverStage
from .prefixes import frac

_preservation_cache: dict[tuple, bool] = {}


def _require_measure_preserving(t: Transform, depth: int, spec: MeasureSpec):
    if not isinstance(t, ClopenTransform):
        raise PreconditionError("covers need exact cylinder preimages")
    key = (canonical_json(t.to_json()), canonical_json(spec.to_json()), depth)
    ok = _preservation_cache.get(key)
    if ok is None:
        ok = check_measure_preserving(t, depth, spec).passed
        _preservation_cache[key] = ok
    if not ok:
        raise PreconditionError(
            f"{t.name} is not measure preserving at depth {depth}")


def preimage_iterates(t: Transform, s: ClopenSet, word_budget: int
                      ) -> Iterator[ClopenSet]:
    """E_0 = s, E_{i+1} = T^-1(E_i), guarded by a word budget."""
    cur = s
    i = 0
    while True:
        yield cur
        i += 1
        cur = preimage_clopen(t, cur)
        if len(cur.words) > word_budget:
            raise BudgetExceeded(
                "preimage iterate grew past the word budget",
                step=i, words=len(cur.words), word_budget=word_budget)


def birkhoff_average_direct(t: Transform, a: ClopenSet, x: str, n: int,
                            spec: MeasureSpec = UNIFORM,
                            word_budget: int = 1 << 18) -> Fraction:
    """(1/(n+1)) * sum over i<=n of mu(I ∩ T^-i(a)) with I = x.Omega."""
    I = cylinder(x) if x else ClopenSet._from_canonical(("",))
    total = Fraction(0)
    gen = preimage_iterates(t, a, word_budget)
    for i in range(n + 1):
        total += next(gen).restrict(x).measure(spec)
    return total / (n + 1)


def birkhoff_average_shifted(t: Transform, a: ClopenSet, x: str, n: int,
                             spec: MeasureSpec = UNIFORM,
                             word_budget: int = 1 << 18) -> Fraction:
    """Same average written through the pulled-back interval copies:
    (1/(n+1)) * sum over i<=n of mu(T^-i(I) ∩ T^-n(a))."""
    I = cylinder(x) if x else ClopenSet._from_canonical(("",))
    gen_a = preimage_iterates(t, a, word_budget)
    deep_a = None
    for _ in range(n + 1):
        deep_a = next(gen_a)
    total = Fraction(0)
    gen_i = preimage_iterates(t, I, word_budget)
    for _ in range(n + 1):
        total += next(gen_i).intersect(deep_a).measure(spec)
    return total / (n + 1)


def l2_average_distance(t: Transform, x: str, n: int,
                        spec: MeasureSpec = UNIFORM,
                        word_budget: int = 1 << 18) -> Fraction:
    """Exact squared L2 distance between the orbit-average indicator
    a_n = (1/(n+1)) * sum of indicators of T^-i(x.Omega) and mu(x.Omega).

    Expanded through pair correlations c_g = mu(T^-g(I) ∩ I), which is
    exact because t preserves the measure (its precondition here).
    """
    check_word(x)
    I = cylinder(x) if x else ClopenSet._from_canonical(("",))
    mu = I.measure(spec)
    gen = preimage_iterates(t, I, word_budget)
    correlations = []
    for _ in range(n + 1):
        correlations.append(next(gen).restrict(x).measure(spec))
    total = (n + 1) * correlations[0]
    for g in range(1, n + 1):
        total += 2 * (n + 1 - g) * correlations[g]
    return total / (n + 1) ** 2 - mu * mu


def sqrt_upper(value: Fraction, bits: int = 16) -> Fraction:
    """Smallest multiple of 2^-bits at or above sqrt(value)."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("negative value")
    scaled = value.numerator << (2 * bits)
    t = isqrt(scaled // value.denominator)
    while t * t * value.denominator < scaled:
        t += 1
    return Fraction(t, 1 << bits)


def ergodic_cover(t: Transform, a: ClopenSet, r: Fraction, x: str,
                  spec: MeasureSpec = UNIFORM, n_budget: int = 1 << 12,
                  word_budget: int = 1 << 18) -> CoverCertificate:
    """Certified cover of the forward-orbit-stays-inside core within x.Omega.

    Searches n over 1, 2, 4, ... until the exact orbit average of
    mu(I ∩ T^-i(a)) drops strictly below r*mu(I); non-ergodic or slowly
    mixing transforms surface as a budget error carrying the best average.
    """
    r = Fraction(r)
    check_word(x)
    mu_a = a.measure(spec)
    if not mu_a < r < 1:
        raise PreconditionError(f"need measure(a) < r < 1, got {mu_a} vs r={r}")
    _require_measure_preserving(t, min(max(len(x), a.max_len, 1), 6), spec)
    I = cylinder(x) if x else ClopenSet._from_canonical(("",))
    mu_i = I.measure(spec)
    target = r * mu_i
    params = {"transform": t.to_json(), "r": r, "x": x}
    gen = preimage_iterates(t, a, word_budget)
    running = I
    total = Fraction(0)
    best = None
    i = 0
    checkpoint = 1
    while i <= n_budget:
        e_i = next(gen)
        total += e_i.restrict(x).measure(spec)
        running = running.intersect(e_i)
        if i == checkpoint or i == 0:
            average = total / (i + 1)
            best = average if best is None else min(best, average)
            if i > 0 and average < target:
                measure = running.measure(spec)
                stage = CoverStage(running, target, measure,
                                   info={"n": i, "average": frac(average)})
                params.update({"n": i, "average": average,
                               "measure_spec": spec.to_json()})
                return CoverCertificate("ergodic", params, [stage],
                                        measure_spec=spec)
            if i > 0:
                checkpoint *= 2
        i += 1
    raise BudgetExceeded(
        "no n within budget pushed the orbit average under r*mu(I)",
        n_budget=n_budget, best_average=frac(best), target=frac(target))


def ergodic_cover_iterate(t: Transform, a: ClopenSet, r: Fraction, k: int,
                          spec: MeasureSpec = UNIFORM,
                          n_budget: int = 1 << 12,
                          word_budget: int = 1 << 18) -> CoverCertificate:
    """Iterate ergodic_cover over every interval of each stage; stage j
    carries the bound r^(j+1)."""
    r = Fraction(r)
    mu_a = a.measure(spec)
    if not mu_a < r < 1:
        raise PreconditionError(f"need measure(a) < r < 1, got {mu_a} vs r={r}")
    stages = [CoverStage(a, r, mu_a)]
    cur = a
    for j in range(k):
        words: list[str] = []
        searched = {}
        for x in cur.words:
            sub = ergodic_cover(t, a, r, x, spec, n_budget, word_budget)
            words.extend(sub.stages[0].content.words)
            searched[x] = sub.params["n"]
        words.sort(key=word_key)
        cur = ClopenSet(words)
        stages.append(CoverStage(cur, r ** (j + 2), cur.measure(spec),
                                 info={"n_by_interval": searched}))
    params = {"transform": t.to_json(), "r": r, "k": k,
              "measure_spec": spec.to_json()}
    return CoverCertificate("ergodic_iterate", params, stages,
                            measure_spec=spec)
