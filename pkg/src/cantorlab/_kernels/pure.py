"""Pure-Python implementations of the hot kernels.

Leaf masks encode a clopen set at a fixed depth d: bit i of the mask is 1
iff the i-th length-d word (in MSB-first numeric order, so word w has index
int(w, 2)) is contained in the set.  All kernels here are exact integer
arithmetic; the compiled module in ``_fast.pyx`` mirrors this API.
"""

BACKEND = "pure"


def sections_common_and(mask: int, depth: int, seclen: int) -> int:
    """Intersection over all words y of length ``seclen`` of the y-sections.

    The y-section of a depth-``depth`` mask is the contiguous block of
    2^(depth-seclen) leaves selected by prefix y.  Requires
    0 <= seclen <= depth.
    """
    if seclen == 0:
        return mask
    block = depth - seclen
    width = 1 << block
    blockmask = (1 << width) - 1
    out = blockmask
    for j in range(1 << seclen):
        out &= (mask >> (j * width)) & blockmask
        if not out:
            break
    return out


def section_popcount_sum(mask: int, depth: int, seclen: int) -> int:
    """Sum over all length-``seclen`` words y of popcount(y-section).

    Equals popcount(mask): every leaf lies in exactly one section.  Exposed
    so tests can exercise the averaging identity through the same blocking.
    """
    if seclen == 0:
        return mask.bit_count()
    width = 1 << (depth - seclen)
    blockmask = (1 << width) - 1
    total = 0
    for j in range(1 << seclen):
        total += ((mask >> (j * width)) & blockmask).bit_count()
    return total


def shift_orbit_hits(bits: bytes, n: int, wlen: int, table: bytes) -> bytes:
    """Membership flags of the left-shift orbit in a depth-``wlen`` set.

    ``bits`` must hold at least n + wlen - 1 entries in {0,1}.  Step k looks
    up the window bits[k:k+wlen] (MSB first) in ``table`` (2^wlen flags).
    """
    if wlen <= 0:
        raise ValueError("wlen must be positive")
    out = bytearray(n)
    window = 0
    for i in range(wlen - 1):
        window = (window << 1) | bits[i]
    mask = (1 << wlen) - 1
    for k in range(n):
        window = ((window << 1) | bits[k + wlen - 1]) & mask
        out[k] = table[window]
    return bytes(out)


def odometer_orbit_hits(x0: int, n: int, wlen: int, table: bytes) -> bytes:
    """Membership flags of the add-one-with-carry orbit.

    ``x0`` is the starting point's first ``wlen`` bits read LSB-first (bit i
    of x0 = sequence bit i), so adding k mod 2^wlen gives the window after k
    steps.  ``table`` is indexed by that LSB-first value.
    """
    if wlen <= 0:
        raise ValueError("wlen must be positive")
    out = bytearray(n)
    size = 1 << wlen
    v = x0 % size
    for k in range(n):
        out[k] = table[v]
        v += 1
        if v == size:
            v = 0
    return bytes(out)
