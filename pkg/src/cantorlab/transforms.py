"""Computable transformations presented by their action on cylinders.

Each transform carries both a preimage presentation (what the cover
constructions consume) and a prefix-monotone forward map on words (what
orbit evaluation consumes); the two are cross-checked by brute force in the
test suite.  Exact-clopen transforms return the exact preimage of any
cylinder as a clopen set; approximable ones (the circle rotation) return
inner/outer clopen sandwiches at a requested precision.

Bidirectional sequences never get their own space: a two-sided sequence is
represented through the zig-zag bijection z: Z -> N with order
0, -1, 1, -2, 2, ... and bidirectional shifts act on the embedded
coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Optional

from .clopen import EMPTY, FULL, ClopenSet, check_word, word_key
from .errors import BudgetExceeded, PreconditionError, SchemaError
from .measures import UNIFORM, MeasureSpec

# -- zig-zag index map ----------------------------------------------------


def zigzag(i: int) -> int:
    """Bijection Z -> N: 0,-1,1,-2,2,... in positions 0,1,2,3,4,..."""
    return 2 * i if i > 0 else -2 * i - 1 if i < 0 else 0


def zigzag_inv(j: int) -> int:
    if j < 0:
        raise ValueError("embedded positions are nonnegative")
    return (j + 1) // 2 if j % 2 == 0 else -(j + 1) // 2


def bit_constraints_clopen(constraints: dict[int, int],
                           word_budget: int = 1 << 20) -> ClopenSet:
    """Clopen set of all sequences with prescribed bits at given positions.

    ``constraints`` maps embedded (nonnegative) positions to bits.  The
    canonical form enumerates all matching words of length max(position)+1,
    so an explicit budget guards against huge position spans.
    """
    if not constraints:
        return FULL
    top = max(constraints)
    free = [j for j in range(top + 1) if j not in constraints]
    if 1 << len(free) > word_budget:
        raise BudgetExceeded(
            "constraint set expands past the word budget",
            positions=sorted(constraints), words=1 << len(free),
            word_budget=word_budget)
    template = [None] * (top + 1)
    for j, b in constraints.items():
        if b not in (0, 1):
            raise ValueError("constraint bits must be 0 or 1")
        template[j] = "01"[b]
    words = []
    for v in range(1 << len(free)):
        chars = list(template)
        for idx, j in enumerate(free):
            chars[j] = "01"[(v >> idx) & 1]
        words.append("".join(chars))
    words.sort(key=word_key)
    return ClopenSet._from_canonical(tuple(words))


def embed_bidirectional(assignments: dict[int, int]) -> ClopenSet:
    """Embedded cylinder for a finite partial map Z -> bits."""
    return bit_constraints_clopen({zigzag(i): b for i, b in assignments.items()})


def bidirectional_span(assignments: dict[int, int]) -> int:
    if not assignments:
        return 0
    return max(assignments) - min(assignments) + 1


# -- transform presentations ------------------------------------------------


class Transform:
    name: str = "abstract"
    exact = False

    def forward(self, u: str) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"name": self.name}

    def __repr__(self):
        return f"<transform {self.name}>"


class ClopenTransform(Transform):
    """Transform whose cylinder preimages are exactly clopen."""

    exact = True

    def preimage_word(self, w: str) -> ClopenSet:
        raise NotImplementedError


class ApproxTransform(Transform):
    """Transform with inner/outer clopen preimage approximations."""

    exact = False

    def preimage_word_inner(self, w: str, precision: int) -> ClopenSet:
        raise NotImplementedError

    def preimage_word_outer(self, w: str, precision: int) -> ClopenSet:
        raise NotImplementedError


class Shift(ClopenTransform):
    name = "shift"

    def forward(self, u: str) -> str:
        return u[1:]

    def forward_power(self, u: str, k: int) -> str:
        return u[k:]

    def preimage_word(self, w: str) -> ClopenSet:
        return ClopenSet._from_canonical(tuple(sorted(("0" + w, "1" + w),
                                                      key=word_key)))


class Odometer(ClopenTransform):
    """Add one with carry in the dyadic sense (bit 0 is least significant)."""

    name = "odometer"

    def forward(self, u: str) -> str:
        n = u.find("0")
        if n < 0:
            return "0" * len(u)
        return "0" * n + "1" + u[n + 1:]

    def forward_power(self, u: str, k: int) -> str:
        # carries from below position L never reach position >= L
        if not u:
            return u
        L = len(u)
        x = int(u[::-1], 2)
        return format((x + k) % (1 << L), f"0{L}b")[::-1]

    def preimage_word(self, w: str) -> ClopenSet:
        n = w.find("1")
        if n < 0:  # w = 0^k: preimage of 0^k Omega is exactly 1^k Omega
            return ClopenSet._from_canonical(("1" * len(w),))
        return ClopenSet._from_canonical(("1" * n + "0" + w[n + 1:],))


class BidirectionalShift(ClopenTransform):
    """Shift of two-sided sequences by n, acting on the zig-zag embedding."""

    def __init__(self, n: int):
        self.n = int(n)
        self.name = "bidirectional_shift"

    def to_json(self):
        return {"name": self.name, "n": self.n}

    def __repr__(self):
        return f"<transform bidirectional_shift({self.n})>"

    def source_position(self, j: int) -> int:
        """Embedded position the output bit at embedded position j reads."""
        return zigzag(zigzag_inv(j) + self.n)

    def forward(self, u: str) -> str:
        out = []
        j = 0
        while True:
            src = self.source_position(j)
            if src >= len(u):
                return "".join(out)
            out.append(u[src])
            j += 1

    def forward_power(self, u: str, k: int) -> str:
        return BidirectionalShift(self.n * k).forward(u) if k else u

    def preimage_word(self, w: str) -> ClopenSet:
        return _bidir_preimage_word(self.n, w)


@lru_cache(maxsize=4096)
def _bidir_preimage_word(n: int, w: str) -> ClopenSet:
    constraints = {zigzag(zigzag_inv(j) + n): int(w[j]) for j in range(len(w))}
    return bit_constraints_clopen(constraints)


def sqrt2m1_interval(p: int) -> tuple[Fraction, Fraction]:
    """Nested rational interval of width 2^-p around sqrt(2) - 1."""
    a = isqrt(2 << (2 * p))  # floor(2^p * sqrt(2)); never exact
    return Fraction(a - (1 << p), 1 << p), Fraction(a + 1 - (1 << p), 1 << p)


class Rotation(ApproxTransform):
    """x -> x + alpha mod 1 on Cantor space read as binary expansions.

    alpha_interval(p) must yield nested rational intervals of width at most
    2^-p containing the (irrational) angle; preimages are certified from
    both sides with two extra bits of working precision, which keeps the
    per-cylinder measure gap at or below 2^-p.
    """

    name = "rotation"

    def __init__(self, alpha_interval: Callable[[int], tuple[Fraction, Fraction]]
                 = sqrt2m1_interval, alpha_name: str = "sqrt2m1"):
        self.alpha_interval = alpha_interval
        self.alpha_name = alpha_name

    def to_json(self):
        return {"name": "rotation", "alpha": self.alpha_name}

    def forward(self, u: str) -> str:
        L = len(u)
        al, ah = self.alpha_interval(L + 2)
        x = Fraction(int(u, 2) if u else 0, 1 << L)
        lo = x + al
        hi = x + Fraction(1, 1 << L) + ah
        base = lo - (lo % 1)
        lo -= base
        hi -= base
        if hi > 1:  # interval straddles an integer: no output bit determined
            return ""
        out = ""
        for k in range(1, L + 3):
            m = int(lo * (1 << k))
            if hi <= Fraction(m + 1, 1 << k):
                out = format(m, f"0{k}b")
            else:
                break
        return out

    def _preimage_interval(self, w: str, q: int
                           ) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Unwrapped inner and outer real intervals for the preimage of w."""
        L = len(w)
        al, ah = self.alpha_interval(q)
        a = Fraction(int(w, 2) if w else 0, 1 << L)
        b = a + Fraction(1, 1 << L)
        return a - al, b - ah, a - ah, b - al  # inner lo/hi, outer lo/hi

    def preimage_word_inner(self, w: str, precision: int) -> ClopenSet:
        q = precision + 2
        ilo, ihi, _, _ = self._preimage_interval(w, q)
        return _interval_clopen(ilo, ihi, q, inner=True)

    def preimage_word_outer(self, w: str, precision: int) -> ClopenSet:
        q = precision + 2
        _, _, olo, ohi = self._preimage_interval(w, q)
        return _interval_clopen(olo, ohi, q, inner=False)


def _range_words(i0: int, i1: int, depth: int) -> list[str]:
    """Dyadic decomposition of the leaf index range [i0, i1) at a depth."""
    out = []
    while i0 < i1:
        size = i0 & -i0 if i0 else 1 << depth
        while size > i1 - i0:
            size >>= 1
        level = size.bit_length() - 1
        out.append(format(i0 >> level, f"0{depth - level}b") if depth > level else "")
        i0 += size
    return out


def _interval_clopen(lo: Fraction, hi: Fraction, depth: int, inner: bool) -> ClopenSet:
    """Clopen approximation of [lo, hi) mod 1 by depth-``depth`` cylinders."""
    if hi <= lo:
        return EMPTY
    if hi - lo >= 1:
        return FULL
    base = lo - (lo % 1)
    lo, hi = lo - base, hi - base
    scale = 1 << depth
    pieces = [(lo, hi)] if hi <= 1 else [(lo, Fraction(1)), (Fraction(0), hi - 1)]
    words: list[str] = []
    for plo, phi in pieces:
        if inner:
            i0 = -((-plo.numerator * scale) // plo.denominator)  # ceil
            i1 = (phi.numerator * scale) // phi.denominator  # floor
        else:
            i0 = (plo.numerator * scale) // plo.denominator  # floor
            i1 = -((-phi.numerator * scale) // phi.denominator)  # ceil
        i0, i1 = max(i0, 0), min(i1, scale)
        words.extend(_range_words(i0, i1, depth))
    return ClopenSet(words)


# -- builtin registry -------------------------------------------------------


def builtin(name: str, **params) -> Transform:
    if name == "shift":
        return Shift()
    if name == "odometer":
        return Odometer()
    if name == "bidirectional_shift":
        return BidirectionalShift(params.get("n", 1))
    if name == "rotation":
        alpha = params.get("alpha", "sqrt2m1")
        if alpha != "sqrt2m1":
            raise SchemaError(f"unknown rotation angle spec: {alpha!r}")
        return Rotation()
    raise SchemaError(f"unknown transform: {name!r}")


def transform_from_json(d: dict) -> Transform:
    if not isinstance(d, dict) or "name" not in d:
        raise SchemaError(f"bad transform descriptor: {d!r}")
    params = {k: v for k, v in d.items() if k != "name"}
    params.pop("precision", None)  # CLI-level default, not a transform field
    return builtin(d["name"], **params)


# -- preimage algebra -------------------------------------------------------


def preimage_clopen(t: Transform, s: ClopenSet) -> ClopenSet:
    if not isinstance(t, ClopenTransform):
        raise PreconditionError(
            f"{t.name} has approximable preimages; use preimage_approx")
    words: list[str] = []
    for w in s.words:
        words.extend(t.preimage_word(w).words)
    return ClopenSet(words)


def preimage_approx(t: Transform, s: ClopenSet, precision: int
                    ) -> tuple[ClopenSet, ClopenSet]:
    if isinstance(t, ClopenTransform):
        exact = preimage_clopen(t, s)
        return exact, exact
    inner = EMPTY
    outer = EMPTY
    for w in s.words:
        inner = inner.union(t.preimage_word_inner(w, precision))
        outer = outer.union(t.preimage_word_outer(w, precision))
    return inner, outer


def iterate_preimage(t: Transform, s: ClopenSet, i: int,
                     word_budget: int = 1 << 20) -> ClopenSet:
    if i < 0:
        raise ValueError("iteration count must be nonnegative")
    cur = s
    for step in range(i):
        cur = preimage_clopen(t, cur)
        if len(cur.words) > word_budget:
            raise BudgetExceeded(
                "preimage iterate grew past the word budget",
                step=step + 1, words=len(cur.words), word_budget=word_budget)
    return cur


def apply_point(t: Transform, point, k: int, out_len: int,
                input_budget: int = 1 << 16) -> str:
    """First out_len bits of T^k(point) via prefix-monotone evaluation."""
    if out_len == 0:
        return ""
    grow = max(out_len + k, out_len, 1)
    while True:
        u = point.prefix(min(grow, input_budget))
        if hasattr(t, "forward_power"):
            v = t.forward_power(u, k)
        else:
            v = u
            for _ in range(k):
                v = t.forward(v)
        if len(v) >= out_len:
            return v[:out_len]
        if grow >= input_budget:
            raise BudgetExceeded(
                "forward evaluation still short of the requested output",
                transform=t.name, steps=k, out_len=out_len,
                produced=len(v), input_budget=input_budget)
        grow *= 2


class PreservationReport:
    """Outcome of an exhaustive cylinder-measure preservation check."""

    def __init__(self, transform: Transform, depth: int, spec: MeasureSpec,
                 violations: list[tuple[str, Fraction, Fraction]]):
        self.transform = transform
        self.depth = depth
        self.spec = spec
        self.violations = violations

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        frac = lambda x: f"{x.numerator}/{x.denominator}"
        return {
            "transform": self.transform.to_json(),
            "depth": self.depth,
            "measure": self.spec.to_json(),
            "passed": self.passed,
            "violations": [
                {"word": w, "preimage_measure": frac(got), "measure": frac(want)}
                for w, got, want in self.violations
            ],
        }


def check_measure_preserving(t: Transform, depth: int,
                             spec: MeasureSpec = UNIFORM) -> PreservationReport:
    """Verify mu(T^-1(w Omega)) = mu(w Omega) for every word up to a depth."""
    from .clopen import all_words

    if not isinstance(t, ClopenTransform):
        raise PreconditionError("measure preservation check needs exact preimages")
    violations = []
    for w in all_words(depth):
        want = spec.word_measure(w)
        got = preimage_clopen(t, ClopenSet._from_canonical((w,))).measure(spec)
        if got != want:
            violations.append((w, got, want))
    return PreservationReport(t, depth, spec, violations)


class BrokenTransform(ClopenTransform):
    """Deliberately non-measure-preserving map for negative tests: the
    preimage of any cylinder prepends a forced 0."""

    name = "broken"

    def forward(self, u: str) -> str:
        return u[1:]

    def preimage_word(self, w: str) -> ClopenSet:
        return ClopenSet._from_canonical(("0" + w,))


class IdentityLike(ClopenTransform):
    """preimage(w) = {w}: measure preserving but maximally non-mixing."""

    name = "identity"

    def forward(self, u: str) -> str:
        return u

    def forward_power(self, u: str, k: int) -> str:
        return u

    def preimage_word(self, w: str) -> ClopenSet:
        return ClopenSet._from_canonical((w,))
