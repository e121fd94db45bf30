"""Packed binary layouts used by the two enumeration engines.

Horizontal layout: one row of machine words per object, bit ``k`` of word
``w`` set iff the object has attribute ``w * width + k``.

Vertical layout: a column (or an extent) is a list of ``(block index, block
value)`` pairs in increasing index order, where block ``b`` covers objects
``b * width .. b * width + width - 1`` and bit ``k`` stands for object
``b * width + k``. Blocks whose value is zero are not stored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from inclose.context import ContractError, FormalContext


class WordWidth(enum.IntEnum):
    W32 = 32
    W64 = 64

    @property
    def dtype(self):
        return np.uint32 if self is WordWidth.W32 else np.uint64

    @property
    def nbytes(self) -> int:
        return self.value // 8


def as_width(width) -> WordWidth:
    try:
        return WordWidth(int(width))
    except ValueError:
        raise ContractError(f"word width must be 32 or 64, got {width!r}") from None


def block_count(m: int, width: int = 64) -> int:
    """Number of blocks covering ``m`` objects: floor((m - 1) / width) + 1, zero for m = 0."""
    return 0 if m <= 0 else (m - 1) // int(width) + 1


def _pack_bool_rows(bits: np.ndarray, width: WordWidth) -> np.ndarray:
    """Pack a (r, c) boolean matrix into (r, ceil(c / width)) little-endian words."""
    r, c = bits.shape
    words = block_count(c, width)
    padded = np.zeros((r, words * width), dtype=bool)
    padded[:, :c] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.dtype(width.dtype).newbyteorder("<")).astype(width.dtype)


def _unpack_words(words: np.ndarray, width: WordWidth, count: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.dtype(width.dtype).newbyteorder("<"))
    as_bytes = words.view(np.uint8).reshape(words.shape[0], words.shape[1] * words.itemsize)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :count].astype(bool)


@dataclass(frozen=True, eq=False)
class HorizontalContext:
    width: WordWidth
    rows: np.ndarray  # (m, words)
    attribute_count: int

    @property
    def words_per_row(self) -> int:
        return self.rows.shape[1]


def pack_horizontal(ctx: FormalContext, width=WordWidth.W64) -> HorizontalContext:
    width = as_width(width)
    rows = _pack_bool_rows(ctx.incidence, width)
    rows.setflags(write=False)
    return HorizontalContext(width, rows, ctx.attribute_count)


def unpack_horizontal(h: HorizontalContext) -> np.ndarray:
    return _unpack_words(h.rows, h.width, h.attribute_count)


@dataclass(frozen=True, eq=False)
class BlockExtent:
    """Object set as sorted ``(block index, nonzero block value)`` pairs."""

    width: WordWidth
    index: np.ndarray
    value: np.ndarray

    def __post_init__(self):
        idx = np.ascontiguousarray(self.index, dtype=np.int64)
        val = np.ascontiguousarray(self.value, dtype=self.width.dtype)
        if idx.shape != val.shape or idx.ndim != 1:
            raise ContractError("block index and value arrays must be 1-d and equal length")
        if len(idx) and (np.any(np.diff(idx) <= 0) or idx[0] < 0):
            raise ContractError("block indices must be non-negative and strictly increasing")
        if np.any(val == 0):
            raise ContractError("zero-valued blocks must not be stored")
        idx.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "index", idx)
        object.__setattr__(self, "value", val)

    @classmethod
    def empty(cls, width=WordWidth.W64) -> "BlockExtent":
        width = as_width(width)
        return cls(width, np.empty(0, np.int64), np.empty(0, width.dtype))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], width=WordWidth.W64) -> "BlockExtent":
        width = as_width(width)
        pairs = list(pairs)
        return cls(width, np.array([p[0] for p in pairs], dtype=np.int64),
                   np.array([p[1] for p in pairs], dtype=width.dtype))

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.index.tolist(), self.value.tolist()))

    def __len__(self):
        return len(self.index)

    def __eq__(self, other):
        if not isinstance(other, BlockExtent):
            return NotImplemented
        return (self.width == other.width and np.array_equal(self.index, other.index)
                and np.array_equal(self.value, other.value))

    def __repr__(self):
        return f"BlockExtent(w{int(self.width)}, {self.pairs()})"


@dataclass(frozen=True, eq=False)
class VerticalContext:
    """Columns as block extents.

    ``dense`` is the same data as a ``(blocks, n)`` word table (zero blocks
    included); the vertical engine reads it to AND one extent block against
    column ``j`` without a merge.
    """

    width: WordWidth
    columns: tuple[BlockExtent, ...]
    object_count: int
    dense: np.ndarray = field(repr=False)


def pack_vertical(ctx: FormalContext, width=WordWidth.W64) -> VerticalContext:
    width = as_width(width)
    dense = np.ascontiguousarray(_pack_bool_rows(ctx.incidence.T, width).T)
    columns = []
    for j in range(ctx.attribute_count):
        nz = np.flatnonzero(dense[:, j])
        columns.append(BlockExtent(width, nz, dense[nz, j]))
    dense.setflags(write=False)
    return VerticalContext(width, tuple(columns), ctx.object_count, dense)


def unpack_vertical(v: VerticalContext) -> np.ndarray:
    m, n = v.object_count, len(v.columns)
    out = np.zeros((m, n), dtype=bool)
    for j, col in enumerate(v.columns):
        out[sorted(blocks_to_object_set(col)), j] = True
    return out


def _same_width(a: BlockExtent, b: BlockExtent):
    if a.width != b.width:
        raise ContractError(f"width mismatch: {int(a.width)} vs {int(b.width)}")


def intersect_blocks(a: BlockExtent, b: BlockExtent) -> BlockExtent:
    """Merge two block lists by index, AND matching blocks, drop zero results."""
    _same_width(a, b)
    common, ia, ib = np.intersect1d(a.index, b.index, assume_unique=True, return_indices=True)
    vals = a.value[ia] & b.value[ib]
    keep = vals != 0
    return BlockExtent(a.width, common[keep], vals[keep])


def is_subset_blocks(a: BlockExtent, b: BlockExtent) -> bool:
    _same_width(a, b)
    pos = np.searchsorted(b.index, a.index)
    if np.any(pos >= len(b.index)):
        return False
    if not np.array_equal(b.index[pos], a.index):
        return False
    return bool(np.all((a.value & b.value[pos]) == a.value))


def cardinality(a: BlockExtent) -> int:
    return int(np.bitwise_count(a.value).sum()) if len(a) else 0


def blocks_to_object_set(a: BlockExtent) -> frozenset:
    w = int(a.width)
    out = []
    for b, v in zip(a.index.tolist(), a.value.tolist()):
        k = 0
        while v:
            if v & 1:
                out.append(b * w + k)
            v >>= 1
            k += 1
    return frozenset(out)


def object_set_to_blocks(objects: Iterable[int], m: int | None = None, width=WordWidth.W64) -> BlockExtent:
    width = as_width(width)
    objs = sorted(set(int(g) for g in objects))
    if objs and (objs[0] < 0 or (m is not None and objs[-1] >= m)):
        raise ContractError(f"object index outside [0, {m})")
    blocks: dict[int, int] = {}
    for g in objs:
        b, k = divmod(g, int(width))
        blocks[b] = blocks.get(b, 0) | (1 << k)
    return BlockExtent.from_pairs(sorted(blocks.items()), width)


def vertical_bytes(pairs: int, width=WordWidth.W64) -> int:
    """Block-pair accounting: each stored block costs an index word and a value word."""
    return int(pairs) * 2 * as_width(width).nbytes


def horizontal_bytes(objects: int) -> int:
    """Per-object accounting: one 4-byte integer per extent member."""
    return int(objects) * 4


def storage_bytes(x) -> int:
    """Bytes needed to store an extent, or a list of extents.

    A :class:`BlockExtent` is charged with :func:`vertical_bytes`; any other
    collection of object indices is charged with :func:`horizontal_bytes`.
    """
    if isinstance(x, BlockExtent):
        return vertical_bytes(len(x), x.width)
    items = list(x)
    if all(isinstance(e, (int, np.integer)) for e in items):
        # a single extent given as object indices
        return horizontal_bytes(len(items))
    return sum(storage_bytes(e) for e in items)
