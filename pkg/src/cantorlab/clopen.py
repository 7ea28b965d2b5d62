"""Finite binary words and canonical clopen subsets of Cantor space.

A word is a str over {'0','1'}; the empty word denotes the whole space.
A clopen set is a finite union of cylinders wOmega kept in canonical form:
prefix-free, maximally merged (never both w0 and w1) and sorted by
(length, bits).  Canonical form makes set identities testable as data
identities, so all equality below is structural.
"""

from __future__ import annotations

from typing import Iterable, Iterator

_MARK = "$"


def check_word(w: str) -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def word_key(w: str) -> tuple[int, str]:
    """Canonical sort key: by length, then numerically within a length."""
    return (len(w), w)


def _trie_insert(root: dict, word: str) -> None:
    node = root
    for b in word:
        if _MARK in node:
            return
        node = node.setdefault(b, {})
    node.clear()
    node[_MARK] = True


def _trie_words(node: dict, prefix: str) -> list[str] | None:
    """Maximally merged word list for a trie, or None if fully covered."""
    if _MARK in node:
        return None
    zero = node.get("0")
    one = node.get("1")
    rz = _trie_words(zero, prefix + "0") if zero is not None else []
    ro = _trie_words(one, prefix + "1") if one is not None else []
    if rz is None and ro is None:
        return None
    words: list[str] = []
    if rz is None:
        words.append(prefix + "0")
    else:
        words.extend(rz)
    if ro is None:
        words.append(prefix + "1")
    else:
        words.extend(ro)
    return words


def _canon(words: Iterable[str]) -> tuple[str, ...]:
    root: dict = {}
    for w in words:
        _trie_insert(root, w)
    if not root:
        return ()
    out = _trie_words(root, "")
    if out is None:
        return ("",)
    out.sort(key=word_key)
    return tuple(out)


class ClopenSet:
    """A canonical finite union of cylinders.

    Instances are immutable; ``words`` is the canonical tuple.  The leaf
    mask at the set's own depth is cached (it backs the fast kernels).
    """

    __slots__ = ("words", "_mask")

    def __init__(self, words: Iterable[str] = ()):
        ws = [check_word(w) for w in words]
        object.__setattr__(self, "words", _canon(ws))
        object.__setattr__(self, "_mask", None)

    @classmethod
    def _from_canonical(cls, words: tuple[str, ...]) -> "ClopenSet":
        self = cls.__new__(cls)
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "_mask", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("ClopenSet is immutable")

    def __eq__(self, other):
        return isinstance(other, ClopenSet) and self.words == other.words

    def __hash__(self):
        return hash(self.words)

    def __repr__(self):
        if self.is_full:
            return "ClopenSet(Ω)"
        return f"ClopenSet({list(self.words)!r})"

    def __bool__(self):
        return bool(self.words)

    @property
    def is_empty(self) -> bool:
        return not self.words

    @property
    def is_full(self) -> bool:
        return self.words == ("",)

    @property
    def max_len(self) -> int:
        return len(self.words[-1]) if self.words else 0

    # -- exact measures ------------------------------------------------

    def dyadic_measure(self) -> tuple[int, int]:
        """Uniform measure as (numerator, log2 denominator), exact."""
        d = self.max_len
        num = sum(1 << (d - len(w)) for w in self.words)
        return (num, d)

    def measure(self, spec=None):
        """Exact measure under a MeasureSpec (uniform when omitted)."""
        from .measures import UNIFORM

        return (spec or UNIFORM).clopen_measure(self)

    # -- boolean algebra -----------------------------------------------

    def union(self, other: "ClopenSet") -> "ClopenSet":
        if self.is_empty:
            return other
        if other.is_empty or self.is_full:
            return self
        if other.is_full:
            return other
        return ClopenSet._from_canonical(_canon(self.words + other.words))

    def intersect(self, other: "ClopenSet") -> "ClopenSet":
        if self.is_empty or other.is_full:
            return self
        if other.is_empty or self.is_full:
            return other
        mine = set(self.words)
        theirs = set(other.words)
        out = []
        for w in other.words:
            for i in range(len(w) + 1):
                if w[:i] in mine:
                    out.append(w)
                    break
        for w in self.words:
            for i in range(len(w)):  # proper prefixes; equal words counted above
                if w[:i] in theirs:
                    out.append(w)
                    break
        out.sort(key=word_key)
        return ClopenSet._from_canonical(tuple(out))

    def complement(self) -> "ClopenSet":
        if self.is_empty:
            return FULL
        if self.is_full:
            return EMPTY
        root: dict = {}
        for w in self.words:
            _trie_insert(root, w)
        out: list[str] = []

        def walk(node: dict, prefix: str) -> None:
            if _MARK in node:
                return
            for b in "01":
                child = node.get(b)
                if child is None:
                    out.append(prefix + b)
                else:
                    walk(child, prefix + b)

        walk(root, "")
        out.sort(key=word_key)
        return ClopenSet._from_canonical(tuple(out))

    __and__ = intersect
    __or__ = union

    def __invert__(self):
        return self.complement()

    # -- prefix operations ----------------------------------------------

    def prepend(self, x: str) -> "ClopenSet":
        """The set {x. omega : omega in self}, i.e. this set relocated below x."""
        if not x:
            return self
        return ClopenSet._from_canonical(tuple(x + w for w in self.words))

    def section(self, y: str) -> "ClopenSet":
        """The exact section {omega : y.omega in self}."""
        if not y:
            return self
        out = []
        ly = len(y)
        for w in self.words:
            if len(w) <= ly:
                if y.startswith(w):
                    return FULL
            elif w.startswith(y):
                out.append(w[ly:])
        return ClopenSet._from_canonical(tuple(out))

    def restrict(self, x: str) -> "ClopenSet":
        """Intersection with the single cylinder x.Omega, in linear time."""
        return self.section(x).prepend(x)

    def contains_word(self, u: str) -> bool:
        """True iff the cylinder uOmega is contained in this set."""
        mine = set(self.words)
        return any(u[:i] in mine for i in range(len(u) + 1))

    def contains_point(self, point) -> bool:
        if self.is_empty:
            return False
        head = point.prefix(self.max_len)
        return any(head[: len(w)] == w for w in self.words)

    # -- leaf masks -------------------------------------------------------

    def leaf_mask(self, depth: int | None = None) -> int:
        """Bit i set iff the length-``depth`` word with value i lies inside."""
        d = self.max_len if depth is None else depth
        if d == self.max_len and self._mask is not None:
            return self._mask
        if d < self.max_len:
            raise ValueError(f"depth {d} below max word length {self.max_len}")
        mask = 0
        for w in self.words:
            run = d - len(w)
            start = (int(w, 2) if w else 0) << run
            mask |= ((1 << (1 << run)) - 1) << start
        if d == self.max_len:
            object.__setattr__(self, "_mask", mask)
        return mask

    @classmethod
    def from_leaf_mask(cls, mask: int, depth: int) -> "ClopenSet":
        if mask == 0:
            return EMPTY
        out: list[str] = []
        _mask_words(mask, depth, "", out)
        out.sort(key=word_key)
        return cls._from_canonical(tuple(out))


def _mask_words(m: int, d: int, prefix: str, out: list[str]) -> None:
    if m == 0:
        return
    width = 1 << d
    if m == (1 << width) - 1:
        out.append(prefix)
        return
    half = width >> 1
    _mask_words(m & ((1 << half) - 1), d - 1, prefix + "0", out)
    _mask_words(m >> half, d - 1, prefix + "1", out)


EMPTY = ClopenSet._from_canonical(())
FULL = ClopenSet._from_canonical(("",))


def normalize(words: Iterable[str]) -> ClopenSet:
    """Canonicalize an arbitrary finite union of cylinders."""
    return ClopenSet(words)


def cylinder(word: str) -> ClopenSet:
    return ClopenSet._from_canonical((check_word(word),))


def concat_prefix(x: str, a: ClopenSet) -> ClopenSet:
    return a.prepend(check_word(x))


def shift_section(y: str, a: ClopenSet) -> ClopenSet:
    return a.section(check_word(y))


def all_words(max_len: int, min_len: int = 0) -> Iterator[str]:
    """All words with min_len <= length <= max_len, in canonical order."""
    for n in range(min_len, max_len + 1):
        for v in range(1 << n):
            yield format(v, f"0{n}b") if n else ""
