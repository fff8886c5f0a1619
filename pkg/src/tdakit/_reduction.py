"""Compiled column reduction for large boundary matrices.

Same left-to-right algorithm as persistence.reduce, restated over CSR
arrays so numba can run it without Python object churn. Reduced columns
are kept in a growable pool keyed by their low index; chains are not
tracked, so this backend cannot produce representatives.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _reduce_lows(indptr, indices, n):
    low = np.full(n, -1, np.int64)
    owner = np.full(n, -1, np.int64)  # low index -> owning column
    col_start = np.empty(n, np.int64)
    col_len = np.empty(n, np.int64)
    cap = np.int64(max(16, indices.size * 2))
    pool = np.empty(cap, np.int64)
    used = np.int64(0)
    bufcap = 64
    cur = np.empty(bufcap, np.int64)
    nxt = np.empty(bufcap, np.int64)
    for i in range(n):
        a0 = indptr[i]
        cn = np.int64(indptr[i + 1] - a0)
        if cn > bufcap:
            while cn > bufcap:
                bufcap *= 2
            cur = np.empty(bufcap, np.int64)
            nxt = np.empty(bufcap, np.int64)
        for k in range(cn):
            cur[k] = indices[a0 + k]
        while cn > 0:
            l = cur[cn - 1]
            j = owner[l]
            if j < 0:
                owner[l] = i
                low[i] = l
                if used + cn > cap:
                    newcap = cap
                    while used + cn > newcap:
                        newcap *= 2
                    newpool = np.empty(newcap, np.int64)
                    newpool[:used] = pool[:used]
                    pool = newpool
                    cap = newcap
                col_start[i] = used
                col_len[i] = cn
                pool[used : used + cn] = cur[:cn]
                used += cn
                break
            s = col_start[j]
            m = col_len[j]
            if cn + m > bufcap:
                newb = bufcap
                while cn + m > newb:
                    newb *= 2
                tmp = np.empty(newb, np.int64)
                tmp[:cn] = cur[:cn]
                cur = tmp
                nxt = np.empty(newb, np.int64)
                bufcap = newb
            a = np.int64(0)
            b = np.int64(0)
            o = np.int64(0)
            while a < cn and b < m:
                x = cur[a]
                y = pool[s + b]
                if x < y:
                    nxt[o] = x
                    o += 1
                    a += 1
                elif y < x:
                    nxt[o] = y
                    o += 1
                    b += 1
                else:
                    a += 1
                    b += 1
            while a < cn:
                nxt[o] = cur[a]
                o += 1
                a += 1
            while b < m:
                nxt[o] = pool[s + b]
                o += 1
                b += 1
            tmp = cur
            cur = nxt
            nxt = tmp
            cn = o
    return low


def reduce_lows_csr(M) -> np.ndarray:
    """Reduce a BoundaryMatrix and return the per-column low (-1 for zero columns)."""
    n = len(M.columns)
    lengths = np.fromiter((len(c) for c in M.columns), dtype=np.int64, count=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lengths, out=indptr[1:])
    indices = np.empty(int(indptr[-1]), dtype=np.int64)
    pos = 0
    for c in M.columns:
        indices[pos : pos + len(c)] = c
        pos += len(c)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    return _reduce_lows(indptr, indices, n)
