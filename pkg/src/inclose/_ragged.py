"""Helpers for ragged integer arrays stored as ``(flat, offsets)`` pairs."""

import numba
import numpy as np


@numba.njit(cache=True)
def _lex_less(flat, off, a, b):
    i, ie = off[a], off[a + 1]
    k, ke = off[b], off[b + 1]
    while i < ie and k < ke:
        if flat[i] != flat[k]:
            return flat[i] < flat[k]
        i += 1
        k += 1
    return (ie - off[a]) < (ke - off[b])


@numba.njit(cache=True)
def _merge_argsort(flat, off):
    n = len(off) - 1
    idx = np.arange(n)
    tmp = np.empty(n, dtype=np.int64)
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, k, t = lo, mid, lo
            while i < mid and k < hi:
                if _lex_less(flat, off, idx[k], idx[i]):
                    tmp[t] = idx[k]
                    k += 1
                else:
                    tmp[t] = idx[i]
                    i += 1
                t += 1
            while i < mid:
                tmp[t] = idx[i]
                i += 1
                t += 1
            while k < hi:
                tmp[t] = idx[k]
                k += 1
                t += 1
            lo = hi
        idx, tmp = tmp, idx
        width *= 2
    return idx


def canonical_order(flat: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Stable permutation sorting the rows lexicographically (prefixes first)."""
    if len(offsets) <= 2:
        return np.arange(len(offsets) - 1)
    return _merge_argsort(np.ascontiguousarray(flat, dtype=np.int32),
                          np.ascontiguousarray(offsets, dtype=np.int64))


@numba.njit(cache=True)
def _take(flat, off, order):
    new_off = np.zeros(len(order) + 1, dtype=np.int64)
    for t in range(len(order)):
        r = order[t]
        new_off[t + 1] = new_off[t] + off[r + 1] - off[r]
    out = np.empty(new_off[-1], dtype=flat.dtype)
    for t in range(len(order)):
        r = order[t]
        out[new_off[t]:new_off[t + 1]] = flat[off[r]:off[r + 1]]
    return out, new_off


def take_ragged(flat, offsets, order):
    """Reorder rows of a ragged array."""
    return _take(np.ascontiguousarray(flat, dtype=np.int32),
                 np.ascontiguousarray(offsets, dtype=np.int64),
                 np.ascontiguousarray(order, dtype=np.int64))
