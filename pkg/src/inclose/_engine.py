"""Pieces shared by the horizontal and vertical engines."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numba
import numpy as np

from inclose.context import ConceptSet, FormalContext


class IncludeBottom(str, enum.Enum):
    """What to do with the empty-extent concept (∅, M).

    ``AUTO`` and ``ALWAYS`` both return the full concept family: (∅, M) is
    added when no object has every attribute and the run did not emit it.
    ``NEVER`` removes (∅, M) from the output whenever it is present.
    """

    AUTO = "auto"
    ALWAYS = "always"
    NEVER = "never"


class EnumerationError(RuntimeError):
    pass


class BudgetExhausted(EnumerationError):
    """Local queue storage outgrew the configured budget."""

    def __init__(self, depth: int, needed_bytes: int, budget_bytes: int, concepts_so_far: int):
        self.depth = depth
        self.needed_bytes = needed_bytes
        self.budget_bytes = budget_bytes
        self.concepts_so_far = concepts_so_far
        super().__init__(
            f"budget exhausted at recursion depth {depth}: local queues need "
            f"{needed_bytes} bytes, budget is {budget_bytes} ({concepts_so_far} concepts so far)"
        )


@dataclass
class EnumerationStats:
    concept_count: int = 0
    elapsed: float = 0.0
    extent_storage_bytes: int = 0
    peak_queue_bytes: int = 0
    canonicity_failures: int = 0
    raw_concept_count: int = 0
    max_depth: int = 0


@dataclass(eq=False)
class ConceptTree:
    """Spawn tree of one run: node ``c`` was spawned by ``parent[c]`` at ``spawn_attribute[c]``.

    Node numbers are the run's concept numbers (root is 0). ``intents`` and
    ``extents`` are ragged ``(flat, offsets)`` pairs indexed by node number.
    """

    parent: np.ndarray
    spawn_attribute: np.ndarray
    intents: tuple[np.ndarray, np.ndarray]
    extents: tuple[np.ndarray, np.ndarray]
    _children: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.parent)

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.parent >= 0))

    def children(self, c: int) -> list[int]:
        """Children of ``c`` in spawn order."""
        if self._children is None:
            kids: list[list[int]] = [[] for _ in range(len(self))]
            for node, p in enumerate(self.parent.tolist()):
                if p >= 0:
                    kids[p].append(node)
            self._children = kids
        return self._children[c]

    def intent(self, c: int) -> tuple[int, ...]:
        flat, off = self.intents
        return tuple(flat[off[c]:off[c + 1]].tolist())

    def extent(self, c: int) -> tuple[int, ...]:
        flat, off = self.extents
        return tuple(flat[off[c]:off[c + 1]].tolist())


@dataclass
class EnumerationResult:
    concepts: ConceptSet
    stats: EnumerationStats
    tree: ConceptTree

    def __iter__(self):
        # allows ``concepts, stats = enumerate_vertical(...)``
        yield self.concepts
        yield self.stats


@numba.njit(cache=True)
def build_intents(parent, bstore, bstart, blen):
    """Expand the intent tree: each node's intent is its own attributes plus its parent's."""
    k = len(parent)
    off = np.zeros(k + 1, dtype=np.int64)
    length = np.zeros(k, dtype=np.int64)
    for c in range(k):
        p = parent[c]
        length[c] = blen[c] + (length[p] if p >= 0 else 0)
        off[c + 1] = off[c] + length[c]
    flat = np.empty(off[k], dtype=np.int32)
    for c in range(k):
        p = parent[c]
        pos = off[c]
        if p >= 0:
            lp = off[p + 1] - off[p]
            flat[pos:pos + lp] = flat[off[p]:off[p + 1]]
            pos += lp
        flat[pos:pos + blen[c]] = bstore[bstart[c]:bstart[c] + blen[c]]
        flat[off[c]:off[c + 1]] = np.sort(flat[off[c]:off[c + 1]])
    return flat, off



def finish(ctx: FormalContext, parent, spawn, intents, extents, stats: EnumerationStats,
           include_bottom) -> EnumerationResult:
    """Apply the bottom-concept policy and package a run's output."""
    policy = IncludeBottom(include_bottom)
    m, n = ctx.shape
    i_flat, i_off = intents
    e_flat, e_off = extents
    tree = ConceptTree(np.asarray(parent, np.int32), np.asarray(spawn, np.int32), intents, extents)
    stats.raw_concept_count = len(parent)

    ext_len = np.diff(e_off)
    int_len = np.diff(i_off)
    bottom_rows = np.flatnonzero((ext_len == 0) & (int_len == n))
    bottom_is_concept = m == 0 or not bool(ctx.incidence.all(axis=1).any())

    keep = np.ones(len(parent), dtype=bool)
    add_bottom = False
    if policy is IncludeBottom.NEVER:
        keep[bottom_rows] = False
    elif bottom_is_concept and len(bottom_rows) == 0:
        add_bottom = True

    from inclose._ragged import take_ragged

    rows = np.flatnonzero(keep)
    i_flat2, i_off2 = take_ragged(i_flat, i_off, rows)
    e_flat2, e_off2 = take_ragged(e_flat, e_off, rows)
    if add_bottom:
        i_flat2 = np.concatenate([i_flat2, np.arange(n, dtype=np.int32)])
        i_off2 = np.append(i_off2, i_off2[-1] + n)
        e_off2 = np.append(e_off2, e_off2[-1])
    concepts = ConceptSet(e_flat2, e_off2, i_flat2, i_off2)
    stats.concept_count = len(concepts)
    return EnumerationResult(concepts, stats, tree)
