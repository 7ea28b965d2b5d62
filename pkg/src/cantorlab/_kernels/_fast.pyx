# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see pure.py for the contract)."""

from libc.stdint cimport uint64_t

BACKEND = "compiled"


def sections_common_and(mask, int depth, int seclen):
    if seclen == 0:
        return mask
    cdef int block = depth - seclen
    cdef int nsec = 1 << seclen
    cdef int j
    cdef uint64_t m64, out64, bm64
    if depth <= 6:
        # whole mask fits in one machine word
        m64 = <uint64_t> mask
        bm64 = (<uint64_t> 1 << (1 << block)) - 1
        out64 = bm64
        for j in range(nsec):
            out64 &= (m64 >> (j * (1 << block))) & bm64
            if out64 == 0:
                break
        return int(out64)
    width = 1 << block
    blockmask = (1 << width) - 1
    out = blockmask
    for j in range(nsec):
        out &= (mask >> (j * width)) & blockmask
        if not out:
            break
    return out


def section_popcount_sum(mask, int depth, int seclen):
    if seclen == 0:
        return mask.bit_count()
    width = 1 << (depth - seclen)
    blockmask = (1 << width) - 1
    total = 0
    for j in range(1 << seclen):
        total += ((mask >> (j * width)) & blockmask).bit_count()
    return total


def shift_orbit_hits(const unsigned char[::1] bits, int n, int wlen,
                     const unsigned char[::1] table):
    if wlen <= 0:
        raise ValueError("wlen must be positive")
    if wlen > 63:
        raise ValueError("wlen too large for the compiled kernel")
    out = bytearray(n)
    cdef unsigned char[::1] ov = out
    cdef uint64_t window = 0
    cdef uint64_t mask = (<uint64_t> 1 << wlen) - 1
    cdef int i, k
    for i in range(wlen - 1):
        window = (window << 1) | bits[i]
    for k in range(n):
        window = ((window << 1) | bits[k + wlen - 1]) & mask
        ov[k] = table[window]
    return bytes(out)


def odometer_orbit_hits(x0, int n, int wlen,
                        const unsigned char[::1] table):
    if wlen <= 0:
        raise ValueError("wlen must be positive")
    if wlen > 63:
        raise ValueError("wlen too large for the compiled kernel")
    out = bytearray(n)
    cdef unsigned char[::1] ov = out
    cdef uint64_t size = <uint64_t> 1 << wlen
    cdef uint64_t v = <uint64_t> (x0 % (1 << wlen))
    cdef int k
    for k in range(n):
        ov[k] = table[v]
        v += 1
        if v == size:
            v = 0
    return bytes(out)
