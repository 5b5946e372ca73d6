"""Compiled per-pair rank loop for the oracle (numba).

The algorithm is the same lowest-set-bit elimination as
:func:`persymm.gf2.row_rank`, run once per coefficient pair.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _rank_prefix(buf, n):
    r = 0
    for a in range(n):
        x = buf[a]
        for b in range(r):
            p = buf[b]
            if x & (p & -p):
                x ^= p
        if x:
            buf[r] = x
            r += 1
    return r


@njit(cache=True)
def count_range(alpha_len, tops, bottoms, colss, sums, radix, lo, hi, out):
    buf = np.zeros(64, dtype=np.int64)
    amask = (np.int64(1) << alpha_len) - 1
    nsub = tops.shape[0]
    for idx in range(lo, hi):
        a = idx & amask
        b = idx >> alpha_len
        code = 0
        for t in range(nsub - 1, -1, -1):
            mask = (np.int64(1) << colss[t]) - 1
            n = 0
            for i in range(tops[t]):
                buf[n] = (a >> i) & mask
                n += 1
            for i in range(bottoms[t]):
                buf[n] = (b >> i) & mask
                n += 1
            if sums[t]:
                buf[n] = ((a >> tops[t]) ^ (b >> bottoms[t])) & mask
                n += 1
            code = code * radix + _rank_prefix(buf, n)
        out[code] += 1
