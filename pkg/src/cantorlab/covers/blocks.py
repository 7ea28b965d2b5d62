"""Greedy block factorization against a prefix-free block set.

A sequence built entirely from blocks of a prefix-free set factors
uniquely, and greedy matching finds that factorization; the first position
admitting no block is a witness that the point leaves the block language.
"""

from __future__ import annotations

from typing import Iterable, Optional

from ..clopen import ClopenSet, check_word
from ..errors import PreconditionError
from ..points import Point


class Factorization:
    def __init__(self, blocks: list[str], failure_position: Optional[int],
                 scanned: int):
        self.blocks = blocks
        self.failure_position = failure_position
        self.scanned = scanned

    @property
    def ok(self) -> bool:
        return self.failure_position is None

    def to_json(self) -> dict:
        return {
            "blocks": self.blocks,
            "failure_position": self.failure_position,
            "scanned": self.scanned,
        }

    def __repr__(self):
        if self.ok:
            return f"Factorization({self.blocks!r})"
        return f"Factorization(failed at {self.failure_position})"


def block_factorization_witness(blocks: Iterable[str] | ClopenSet,
                                point: Point, max_len: int) -> Factorization:
    """Factor the first max_len bits of a point into blocks, greedily."""
    words = tuple(blocks.words) if isinstance(blocks, ClopenSet) else tuple(
        check_word(w) for w in blocks)
    if not words or "" in words:
        raise PreconditionError("block set must be nonempty words")
    wordset = set(words)
    for w in words:
        if any(w[:i] in wordset for i in range(1, len(w))):
            raise PreconditionError(f"block set is not prefix-free at {w!r}")
    lengths = sorted({len(w) for w in words})
    out: list[str] = []
    pos = 0
    while pos < max_len:
        hit = None
        for ell in lengths:
            candidate = point.prefix(pos + ell)[pos:]
            if candidate in wordset:
                hit = candidate
                break
        if hit is None:
            return Factorization(out, pos, pos)
        out.append(hit)
        pos += len(hit)
    return Factorization(out, None, pos)
