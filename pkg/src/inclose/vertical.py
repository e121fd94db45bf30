"""Vertical-storage enumerator (In-Close5).

Both the context and every extent are kept as block pairs (see
:mod:`inclose.bitstore`). Forming the child extent ``C = A ∩ column j``
walks the blocks of ``A`` and ANDs each block value with the matching word
of column ``j``, so one machine instruction handles up to 32 or 64 objects.

Bookkeeping follows the global-queue design: every spawned child gets the
next concept number and its record (spawn attribute, parent, extent span in
the arena) lives in arrays indexed by that number, instead of a queue
allocated in every recursion frame.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numba
import numpy as np

from inclose import bitstore
from inclose._engine import (
    ConceptTree,
    EnumerationResult,
    EnumerationStats,
    IncludeBottom,
    build_intents,
    finish,
)
from inclose.bitstore import BlockExtent, VerticalContext, WordWidth
from inclose.context import ContractError, FormalContext


@dataclass(frozen=True)
class VerticalEngineConfig:
    width: WordWidth = WordWidth.W64
    include_bottom: IncludeBottom = IncludeBottom.AUTO
    arena_reserve: int = 1 << 16
    # differential-testing switch: when off, empty intersections are not
    # remembered and the bottom concept is reached through the normal path
    empty_skip: bool = True

    def __post_init__(self):
        object.__setattr__(self, "width", bitstore.as_width(self.width))
        object.__setattr__(self, "include_bottom", IncludeBottom(self.include_bottom))
        if self.arena_reserve < 1:
            raise ContractError("arena_reserve must be positive")


@dataclass(eq=False)
class ExtentArena:
    """Block pairs of all extents, back to back; extent ``c`` spans ``start[c]:start[c+1]``."""

    width: WordWidth
    index: np.ndarray = field(default_factory=lambda: np.empty(0, np.int32))
    value: np.ndarray = field(default=None)
    start: list = field(default_factory=lambda: [0])

    def __post_init__(self):
        if self.value is None:
            self.value = np.empty(0, self.width.dtype)

    @property
    def top(self) -> int:
        return int(self.start[-1])

    def extent(self, c: int) -> BlockExtent:
        lo, hi = self.start[c], self.start[c + 1]
        return BlockExtent(self.width, self.index[lo:hi], self.value[lo:hi])

    def append(self, ext: BlockExtent) -> None:
        if ext.width != self.width:
            raise ContractError("extent width differs from arena width")
        self.index = np.concatenate([self.index[:self.top], ext.index.astype(np.int32)])
        self.value = np.concatenate([self.value[:self.top], ext.value])
        self.start.append(self.top + len(ext))

    def storage_bytes(self) -> int:
        return bitstore.vertical_bytes(self.top, self.width)


@dataclass(eq=False)
class GlobalQueue:
    """Per-concept spawn records indexed by concept number.

    ``spawn_attribute[c]`` is the column where concept ``c``'s extent was
    found and ``parent[c]`` the concept whose scan found it (both -1 for the
    root). ``intent_start`` marks where each concept's own attributes begin
    in the run's intent store.
    """

    spawn_attribute: list = field(default_factory=lambda: [-1])
    parent: list = field(default_factory=lambda: [-1])
    intent_start: list = field(default_factory=lambda: [0])

    @property
    def highc(self) -> int:
        return len(self.parent)


def spawn_child(queue: GlobalQueue, arena: ExtentArena, C: BlockExtent, j: int, parent: int) -> int:
    """Record a canonical child extent and return its concept number."""
    if not 0 <= parent < queue.highc:
        raise ContractError(f"unknown parent concept {parent}")
    arena.append(C)
    queue.spawn_attribute.append(int(j))
    queue.parent.append(int(parent))
    queue.intent_start.append(0)
    return queue.highc - 1


def is_canonical_vertical(C: BlockExtent, j: int, B, vctx: VerticalContext) -> bool:
    """True unless some column ``k > j`` outside ``B`` contains ``C``."""
    B = frozenset(B)
    for k in range(len(vctx.columns) - 1, j, -1):
        if k not in B and bitstore.is_subset_blocks(C, vctx.columns[k]):
            return False
    return True


def concept_tree(queue: GlobalQueue, intents=None, extents=None) -> ConceptTree:
    empty = (np.empty(0, np.int32), np.zeros(queue.highc + 1, np.int64))
    return ConceptTree(
        np.asarray(queue.parent, np.int32),
        np.asarray(queue.spawn_attribute, np.int32),
        intents if intents is not None else empty,
        extents if extents is not None else empty,
    )


@numba.njit(cache=True, inline="always")
def _bit(bits, level, j):
    return (bits[level, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)


@numba.njit(cache=True, inline="always")
def _set(bits, level, j):
    bits[level, j >> 6] |= np.uint64(1) << np.uint64(j & 63)


@numba.njit(cache=True)
def _grow(a, need):
    if need <= len(a):
        return a
    b = np.empty(max(need, 2 * len(a)), a.dtype)
    b[:len(a)] = a
    return b


@numba.njit(cache=True)
def _in_close5(dense, root_idx, root_val, m, n, empty_skip, reserve):
    nw = (n + 63) // 64
    levels = min(m, n) + 2
    ccap = 1024
    start = np.zeros(ccap + 1, np.int64)
    spawn = np.full(ccap, -1, np.int32)
    parent = np.full(ccap, -1, np.int32)
    bstart = np.zeros(ccap, np.int64)
    blen = np.zeros(ccap, np.int64)
    a_idx = np.empty(max(reserve, len(root_idx) + 1), np.int32)
    a_val = np.empty(max(reserve, len(root_idx) + 1), root_val.dtype)
    bstore = np.empty(max(n, 16), np.int32)
    bptr = 0

    nroot = len(root_idx)
    a_idx[:nroot] = root_idx
    a_val[:nroot] = root_val
    start[1] = nroot
    highc = 1

    Bb = np.zeros((levels, nw), np.uint64)   # intent of the node at each level
    Sb = np.zeros((levels, nw), np.uint64)   # skip set (Bchild) at each level
    f_lo = np.zeros(levels, np.int64)
    f_cur = np.zeros(levels, np.int64)

    one = np.uint64(1)
    fails = 0
    max_depth = 0
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
                if _bit(Sb, L, j):
                    continue
                top = start[highc]
                if top + na > len(a_idx):
                    a_idx = _grow(a_idx, top + na)
                    a_val = _grow(a_val, top + na)
                cnt = 0
                same = True
                for p in range(a0, a1):
                    v = a_val[p]
                    w = dense[a_idx[p], j] & v
                    if w != v:
                        same = False
                    if w != 0:
                        a_idx[top + cnt] = a_idx[p]
                        a_val[top + cnt] = w
                        cnt += 1
                if same:
                    _set(Bb, L, j)
                    _set(Sb, L, j)
                    bstore[bptr] = j
                    bptr += 1
                elif cnt == 0 and empty_skip:
                    _set(Sb, L, j)
                else:
                    # any free column above j that holds C? Walk the free bits a
                    # word at a time, nearest first: neighbours tend to contain C
                    canonical = True
                    lo = (j + 1) >> 6
                    for wi in range(lo, nw):
                        free = ~Sb[L, wi]
                        if wi == lo:
                            free &= ~((one << np.uint64((j + 1) & 63)) - one)
                        while free != 0:
                            lowest = free & (~free + one)
                            free ^= lowest
                            k = wi * 64 + _popcount(lowest - one)
                            if k >= n:
                                break
                            inside = True
                            for p in range(top, top + cnt):
                                w = a_val[p]
                                if dense[a_idx[p], k] & w != w:
                                    inside = False
                                    break
                            if inside:
                                canonical = False
                                break
                        if not canonical:
                            break
                    if canonical:
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
        Bb[L + 1, :] = Bb[L, :]
        Sb[L + 1, :] = Sb[L, :]
        _set(Bb, L + 1, j)
        _set(Sb, L + 1, j)
        L += 1
        y = j - 1
        pending = True

    return (start[:highc + 1].copy(), a_idx[:start[highc]].copy(), a_val[:start[highc]].copy(),
            spawn[:highc].copy(), parent[:highc].copy(), bstore[:bptr].copy(),
            bstart[:highc].copy(), blen[:highc].copy(), fails, max_depth)


@numba.njit(cache=True)
def _decode(start, a_idx, a_val, width):
    k = len(start) - 1
    off = np.zeros(k + 1, np.int64)
    total = 0
    for p in range(len(a_val)):
        total += _popcount(np.uint64(a_val[p]))
    flat = np.empty(total, np.int32)
    pos = 0
    one = np.uint64(1)
    for c in range(k):
        for p in range(start[c], start[c + 1]):
            base = a_idx[p] * width
            v = np.uint64(a_val[p])
            b = 0
            while v:
                if v & one:
                    flat[pos] = base + b
                    pos += 1
                v >>= one
                b += 1
        off[c + 1] = pos
    return flat, off


@numba.njit(cache=True, inline="always")
def _popcount(v):
    c = 0
    while v:
        v &= v - np.uint64(1)
        c += 1
    return c


def root_extent(m: int, width=WordWidth.W64) -> BlockExtent:
    """The extent of the top concept: every object, one full block per ``width`` objects."""
    width = bitstore.as_width(width)
    return bitstore.object_set_to_blocks(range(m), m, width)


def enumerate_vertical(ctx: FormalContext, cfg: VerticalEngineConfig | None = None) -> EnumerationResult:
    """Enumerate all formal concepts of ``ctx`` with the vertical engine.

    Returns an :class:`EnumerationResult`; it unpacks as ``(concepts, stats)``.
    ``stats.extent_storage_bytes`` charges every stored block pair an index
    word and a value word of the configured width.
    """
    cfg = cfg or VerticalEngineConfig()
    m, n = ctx.shape
    vctx = bitstore.pack_vertical(ctx, cfg.width)
    root = root_extent(m, cfg.width)

    t0 = time.perf_counter()
    (start, a_idx, a_val, spawn, parent, bstore, bstart, blen, fails, depth) = _in_close5(
        vctx.dense, root.index.astype(np.int32), root.value, m, n, cfg.empty_skip, cfg.arena_reserve
    )
    elapsed = time.perf_counter() - t0

    stats = EnumerationStats(
        elapsed=elapsed,
        extent_storage_bytes=bitstore.vertical_bytes(len(a_val), cfg.width),
        peak_queue_bytes=len(parent) * 8,
        canonicity_failures=int(fails),
        max_depth=int(depth),
    )
    intents = build_intents(parent, bstore, bstart, blen)
    extents = _decode(start, a_idx, a_val, int(cfg.width))
    return finish(ctx, parent, spawn, intents, extents, stats, cfg.include_bottom)


def run_arena(ctx: FormalContext, cfg: VerticalEngineConfig | None = None) -> tuple[GlobalQueue, ExtentArena]:
    """Run the engine and hand back its global queue and extent arena."""
    cfg = cfg or VerticalEngineConfig()
    m, n = ctx.shape
    vctx = bitstore.pack_vertical(ctx, cfg.width)
    root = root_extent(m, cfg.width)
    start, a_idx, a_val, spawn, parent, _, bstart, _, _, _ = _in_close5(
        vctx.dense, root.index.astype(np.int32), root.value, m, n, cfg.empty_skip, cfg.arena_reserve
    )
    queue = GlobalQueue(spawn.tolist(), parent.tolist(), bstart.tolist())
    arena = ExtentArena(cfg.width, a_idx, a_val, start.tolist())
    return queue, arena
