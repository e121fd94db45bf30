"""Horizontal-storage enumerator (In-Close2 / In-Close4 style).

The context is packed row-wise: one run of machine words per object. An
extent is a list of object indices, so forming ``C = A ∩ column j`` tests
one bit per object of ``A``. The canonicity test ANDs the packed rows of
``C``'s objects over the words holding attributes above ``j``; ``C`` fails
when a bit outside ``B`` survives.

Each recursion frame keeps a local queue of the children it spawned. The
queues of all live frames are charged against a byte budget, which stands
in for the fixed per-frame arrays that make the original program run out
of stack on very wide contexts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numba
import numpy as np

from inclose import bitstore
from inclose._engine import (
    BudgetExhausted,
    EnumerationResult,
    EnumerationStats,
    IncludeBottom,
    build_intents,
    finish,
)
from inclose.bitstore import HorizontalContext, WordWidth
from inclose.context import ContractError, FormalContext

# one queue entry: spawn attribute and concept number, 4 bytes each
QUEUE_ENTRY_BYTES = 8
# room for one fixed 5,000-entry queue: wide enough for ordinary datasets,
# too small for a context with several thousand columns
MAX_QUEUE_ENTRIES = 5000
DEFAULT_QUEUE_BUDGET = MAX_QUEUE_ENTRIES * QUEUE_ENTRY_BYTES


@dataclass(frozen=True)
class HorizontalEngineConfig:
    width: WordWidth = WordWidth.W64
    # In-Close3/4 behaviour; False gives plain In-Close2
    empty_skip: bool = True
    local_queue_memory_budget: int = DEFAULT_QUEUE_BUDGET
    include_bottom: IncludeBottom = IncludeBottom.AUTO

    def __post_init__(self):
        object.__setattr__(self, "width", bitstore.as_width(self.width))
        object.__setattr__(self, "include_bottom", IncludeBottom(self.include_bottom))
        if self.local_queue_memory_budget <= 0:
            raise ContractError("local_queue_memory_budget must be positive")


@dataclass
class LocalQueue:
    """Children found by one frame's scan: ``(extent, spawn attribute)`` in spawn order."""

    entries: list = field(default_factory=list)

    def push(self, extent, j: int) -> None:
        self.entries.append((tuple(int(g) for g in extent), int(j)))

    def clear(self) -> None:
        self.entries.clear()

    def __len__(self):
        return len(self.entries)

    def nbytes(self) -> int:
        return QUEUE_ENTRY_BYTES * len(self.entries)


def is_canonical_horizontal(C, j: int, B, hctx: HorizontalContext) -> bool:
    """True unless some attribute ``k > j`` outside ``B`` is shared by every object of ``C``."""
    w = int(hctx.width)
    n = hctx.attribute_count
    words = hctx.words_per_row
    dt = hctx.width.dtype
    acc = np.full(words, np.iinfo(dt).max, dtype=dt)
    for g in C:
        acc &= hctx.rows[g]
    # keep only attributes j+1 .. n-1 that are not in B
    keep = np.zeros(words * w, dtype=bool)
    keep[j + 1:n] = True
    for b in B:
        keep[b] = False
    mask = bitstore._pack_bool_rows(keep[None, :], hctx.width)[0]
    return not np.any(acc & mask)


@numba.njit(cache=True, inline="always")
def _hbit(bits, level, j, W, bit):
    return bits[level, j // W] & bit[j % W]


@numba.njit(cache=True, inline="always")
def _hset(bits, level, j, W, bit):
    bits[level, j // W] |= bit[j % W]


def _masks(width: WordWidth):
    # bit[k] = 1 << k, low[k] = (1 << k) - 1 for k in 0..width
    w = int(width)
    bit = np.array([1 << k for k in range(w)], dtype=width.dtype)
    low = np.array([(1 << k) - 1 for k in range(w + 1)], dtype=width.dtype)
    return bit, low


@numba.njit(cache=True)
def _grow(a, need):
    if need <= len(a):
        return a
    b = np.empty(max(need, 2 * len(a)), a.dtype)
    b[:len(a)] = a
    return b


@numba.njit(cache=True)
def _in_close(rows, bit, low, m, n, W, empty_skip, budget, entry_bytes):
    nw = rows.shape[1]
    levels = min(m, n) + 2
    ccap = 1024
    start = np.zeros(ccap + 1, np.int64)
    spawn = np.full(ccap, -1, np.int32)
    parent = np.full(ccap, -1, np.int32)
    bstart = np.zeros(ccap, np.int64)
    blen = np.zeros(ccap, np.int64)
    ext = np.empty(max(1 << 16, m + 1), np.int32)
    bstore = np.empty(max(n, 16), np.int32)
    bptr = 0

    for g in range(m):
        ext[g] = g
    start[1] = m
    highc = 1

    Sb = np.zeros((levels, max(nw, 1)), rows.dtype)   # B plus skipped attributes, per level
    acc = np.empty(max(nw, 1), rows.dtype)
    f_lo = np.zeros(levels, np.int64)
    f_cur = np.zeros(levels, np.int64)
    qcum = np.zeros(levels, np.int64)         # local queue bytes of frames 0..L

    # mask of valid attribute bits in the last word
    tail = n - (nw - 1) * W if nw > 0 else 0
    last_mask = low[tail] if tail < W else ~low[0]

    fails = 0
    max_depth = 0
    peak = 0
    status = 0
    c = 0
    L = 0
    y = n - 1
    pending = True
    top_level = 0
    while True:
        if pending:
            pending = False
            if L > max_depth:
                max_depth = L
            qcum[L] = (qcum[L - 1] if L > 0 else 0) + (y + 1) * entry_bytes
            if qcum[L] > peak:
                peak = qcum[L]
            if qcum[L] > budget:
                status = 1
                break
            first_child = highc
            bstore = _grow(bstore, bptr + y + 2)
            bstart[c] = bptr
            if c > 0:
                bstore[bptr] = spawn[c]
                bptr += 1
            a0 = start[c]
            a1 = start[c + 1]
            na = a1 - a0
            for j in range(y, -1, -1):
                if _hbit(Sb, L, j, W, bit):
                    continue
                top = start[highc]
                if top + na > len(ext):
                    ext = _grow(ext, top + na)
                wj = j // W
                bsh = bit[j % W]
                cnt = 0
                for p in range(a0, a1):
                    g = ext[p]
                    if rows[g, wj] & bsh:
                        ext[top + cnt] = g
                        cnt += 1
                if cnt == na:
                    _hset(Sb, L, j, W, bit)
                    bstore[bptr] = j
                    bptr += 1
                elif cnt == 0 and empty_skip:
                    _hset(Sb, L, j, W, bit)
                else:
                    # AND the rows of C over the words above j, outside B
                    lo = (j + 1) // W
                    live = False
                    for w in range(lo, nw):
                        v = ~Sb[L, w]
                        if w == nw - 1:
                            v &= last_mask
                        if w == lo:
                            v &= ~low[(j + 1) % W]
                        acc[w] = v
                        if v != 0:
                            live = True
                    p = top
                    while live and p < top + cnt:
                        g = ext[p]
                        live = False
                        for w in range(lo, nw):
                            acc[w] &= rows[g, w]
                            if acc[w] != 0:
                                live = True
                        p += 1
                    if not live:
                        if highc + 1 >= len(spawn):
                            cap = 2 * len(spawn)
                            spawn = _grow(spawn, cap)
                            parent = _grow(parent, cap)
                            bstart = _grow(bstart, cap)
                            blen = _grow(blen, cap)
                            start = _grow(start, cap + 1)
                        spawn[highc] = j
                        parent[highc] = c
                        highc += 1
                        start[highc] = top + cnt
                    else:
                        fails += 1
            blen[c] = bptr - bstart[c]
            f_lo[L] = first_child
            f_cur[L] = highc - 1
            top_level = L

        # next queued child: deepest frame with work left, last spawned first
        L = top_level
        while L >= 0 and f_cur[L] < f_lo[L]:
            L -= 1
        if L < 0:
            break
        top_level = L
        c = f_cur[L]
        f_cur[L] -= 1
        j = spawn[c]
        Sb[L + 1, :] = Sb[L, :]
        _hset(Sb, L + 1, j, W, bit)
        L += 1
        y = j - 1
        pending = True

    if status:
        blen[c] = 0
    return (status, L, qcum[L] if status else peak,
            start[:highc + 1].copy(), ext[:start[highc]].copy(),
            spawn[:highc].copy(), parent[:highc].copy(), bstore[:bptr].copy(),
            bstart[:highc].copy(), blen[:highc].copy(), fails, max_depth, peak)


def enumerate_horizontal(ctx: FormalContext, cfg: HorizontalEngineConfig | None = None) -> EnumerationResult:
    """Enumerate all formal concepts of ``ctx`` with the horizontal engine.

    Returns an :class:`EnumerationResult`; it unpacks as ``(concepts, stats)``.
    Raises :class:`BudgetExhausted` when the live local queues would need
    more than ``cfg.local_queue_memory_budget`` bytes.
    """
    cfg = cfg or HorizontalEngineConfig()
    m, n = ctx.shape
    hctx = bitstore.pack_horizontal(ctx, cfg.width)

    t0 = time.perf_counter()
    bit, low = _masks(cfg.width)
    (status, depth, needed, start, ext, spawn, parent, bstore, bstart, blen,
     fails, max_depth, peak) = _in_close(
        hctx.rows, bit, low, m, n, int(cfg.width), cfg.empty_skip,
        int(cfg.local_queue_memory_budget), QUEUE_ENTRY_BYTES,
    )
    elapsed = time.perf_counter() - t0
    if status:
        raise BudgetExhausted(int(depth), int(needed), int(cfg.local_queue_memory_budget), len(parent))

    stats = EnumerationStats(
        elapsed=elapsed,
        extent_storage_bytes=bitstore.horizontal_bytes(len(ext)),
        peak_queue_bytes=int(peak),
        canonicity_failures=int(fails),
        max_depth=int(max_depth),
    )
    intents = build_intents(parent, bstore, bstart, blen)
    return finish(ctx, parent, spawn, intents, (ext.copy(), start), stats, cfg.include_bottom)
