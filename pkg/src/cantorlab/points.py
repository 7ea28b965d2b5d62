"""Finitely presented points of Cantor space.

True Martin-Löf random sequences cannot be written down, so experiments run
on stand-ins: eventually periodic points, explicit prefixes padded with a
constant bit, and pseudo-random points driven by an explicit seed.  Every
point is deterministic: prefix(n) is always a prefix of prefix(m) for
n <= m, and seeded points use splitmix64 (below) rather than any platform
RNG so traces reproduce bit for bit everywhere.
"""

from __future__ import annotations

from .clopen import check_word

_M64 = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (next_state, 64 output bits)."""
    state = (state + 0x9E3779B97F4A7C15) & _M64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return state, z ^ (z >> 31)


class Point:
    """Base class; subclasses fill a shared bit buffer on demand."""

    statistical = False  # True when only statistical claims make sense

    def __init__(self):
        self._buf = bytearray()

    def _extend(self, n: int) -> None:
        raise NotImplementedError

    def bits(self, n: int) -> bytes:
        """First n bits as a bytes object of 0/1 values."""
        if len(self._buf) < n:
            self._extend(n)
        return bytes(self._buf[:n])

    def bit(self, i: int) -> int:
        if len(self._buf) <= i:
            self._extend(i + 1)
        return self._buf[i]

    def prefix(self, n: int) -> str:
        return "".join("01"[b] for b in self.bits(n))

    def to_json(self) -> dict:
        raise NotImplementedError


class PeriodicPoint(Point):
    """preamble followed by cycle repeated forever."""

    def __init__(self, preamble: str, cycle: str):
        super().__init__()
        self.preamble = check_word(preamble)
        self.cycle = check_word(cycle)
        if not cycle:
            raise ValueError("cycle must be nonempty")

    def _extend(self, n: int) -> None:
        buf = self._buf
        while len(buf) < n:
            i = len(buf)
            if i < len(self.preamble):
                buf.append(int(self.preamble[i]))
            else:
                buf.append(int(self.cycle[(i - len(self.preamble)) % len(self.cycle)]))

    def to_json(self):
        return {"kind": "periodic", "preamble": self.preamble, "cycle": self.cycle}

    def __repr__(self):
        return f"PeriodicPoint({self.preamble!r}, {self.cycle!r})"


class ExplicitPoint(Point):
    """An explicit prefix padded with a constant fill bit."""

    def __init__(self, prefix: str = "", fill: int = 0):
        super().__init__()
        self.head = check_word(prefix)
        if fill not in (0, 1):
            raise ValueError("fill must be 0 or 1")
        self.fill = fill

    def _extend(self, n: int) -> None:
        buf = self._buf
        while len(buf) < n:
            i = len(buf)
            buf.append(int(self.head[i]) if i < len(self.head) else self.fill)

    def to_json(self):
        return {"kind": "explicit", "prefix": self.head, "fill": self.fill}

    def __repr__(self):
        return f"ExplicitPoint({self.head!r}, fill={self.fill})"


class SeededPoint(Point):
    """Pseudo-random bits from splitmix64; bit i is bit (i mod 64) of the
    (i div 64)-th output block, LSB first."""

    statistical = True

    def __init__(self, seed: int):
        super().__init__()
        self.seed = int(seed)
        self._state = self.seed & _M64

    def _extend(self, n: int) -> None:
        buf = self._buf
        while len(buf) < n:
            self._state, block = splitmix64(self._state)
            for j in range(64):
                buf.append((block >> j) & 1)

    def to_json(self):
        return {"kind": "seeded", "seed": self.seed}

    def __repr__(self):
        return f"SeededPoint({self.seed})"


ZEROS = ExplicitPoint("", 0)
ONES = ExplicitPoint("", 1)
