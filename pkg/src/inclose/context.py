"""Formal contexts, derivation operators and concept collections.

Object and attribute indices are 0-based everywhere in the library. Sets of
indices are exchanged as ``frozenset`` values; the bulk concept collections
returned by the engines keep their members in flat integer arrays and only
materialise Python sets on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

ObjectSet = frozenset
AttributeSet = frozenset


class ContractError(ValueError):
    """Raised when an argument violates an operation's precondition."""


def _check_indices(members: Iterable[int], bound: int, kind: str) -> frozenset:
    out = frozenset(int(x) for x in members)
    for x in out:
        if not 0 <= x < bound:
            raise ContractError(f"{kind} index {x} outside [0, {bound})")
    return out


@dataclass(frozen=True, eq=False)
class FormalContext:
    """Binary incidence relation between ``m`` objects and ``n`` attributes.

    ``incidence`` is stored as a read-only ``(m, n)`` boolean array. Names
    default to ``"g1".."gm"`` and ``"a1".."an"``.
    """

    incidence: np.ndarray
    object_names: tuple[str, ...]
    attribute_names: tuple[str, ...]

    def __init__(self, incidence, object_names=None, attribute_names=None):
        inc = np.array(incidence, dtype=bool, copy=True)
        if inc.ndim != 2:
            if inc.size == 0:
                inc = inc.reshape(0, 0)
            else:
                raise ContractError("incidence must be a 2-d matrix")
        m, n = inc.shape
        if object_names is None:
            object_names = [f"g{i + 1}" for i in range(m)]
        if attribute_names is None:
            attribute_names = [f"a{j + 1}" for j in range(n)]
        object_names = tuple(str(s) for s in object_names)
        attribute_names = tuple(str(s) for s in attribute_names)
        if len(object_names) != m or len(attribute_names) != n:
            raise ContractError(
                f"name lists ({len(object_names)}, {len(attribute_names)}) "
                f"do not match shape ({m}, {n})"
            )
        inc.setflags(write=False)
        object.__setattr__(self, "incidence", inc)
        object.__setattr__(self, "object_names", object_names)
        object.__setattr__(self, "attribute_names", attribute_names)

    @property
    def object_count(self) -> int:
        return self.incidence.shape[0]

    @property
    def attribute_count(self) -> int:
        return self.incidence.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.incidence.shape

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (
            self.shape == other.shape
            and bool(np.array_equal(self.incidence, other.incidence))
            and self.object_names == other.object_names
            and self.attribute_names == other.attribute_names
        )

    def __hash__(self):
        return hash((self.shape, self.incidence.tobytes(), self.object_names, self.attribute_names))

    def __repr__(self):
        m, n = self.shape
        return f"FormalContext({m}x{n}, density={self.density():.3f})"

    def density(self) -> float:
        return float(self.incidence.mean()) if self.incidence.size else 0.0

    def row(self, g: int) -> frozenset:
        return frozenset(np.flatnonzero(self.incidence[g]).tolist())

    def column(self, j: int) -> frozenset:
        return frozenset(np.flatnonzero(self.incidence[:, j]).tolist())

    def attribute_index(self, name: str) -> int:
        return self.attribute_names.index(name)

    def object_index(self, name: str) -> int:
        return self.object_names.index(name)


class Concept(NamedTuple):
    extent: frozenset
    intent: frozenset


def derive_attributes(ctx: FormalContext, objects: Iterable[int]) -> frozenset:
    """Attributes shared by every object in ``objects`` (all attributes if empty)."""
    A = _check_indices(objects, ctx.object_count, "object")
    if not A:
        return frozenset(range(ctx.attribute_count))
    common = ctx.incidence[sorted(A)].all(axis=0)
    return frozenset(np.flatnonzero(common).tolist())


def derive_objects(ctx: FormalContext, attributes: Iterable[int]) -> frozenset:
    """Objects having every attribute in ``attributes`` (all objects if empty)."""
    B = _check_indices(attributes, ctx.attribute_count, "attribute")
    if not B:
        return frozenset(range(ctx.object_count))
    common = ctx.incidence[:, sorted(B)].all(axis=1)
    return frozenset(np.flatnonzero(common).tolist())


def close_attributes(ctx: FormalContext, attributes: Iterable[int]) -> Concept:
    extent = derive_objects(ctx, attributes)
    return Concept(extent, derive_attributes(ctx, extent))


def close_objects(ctx: FormalContext, objects: Iterable[int]) -> Concept:
    intent = derive_attributes(ctx, objects)
    return Concept(derive_objects(ctx, intent), intent)


def is_concept(ctx: FormalContext, c: Concept) -> bool:
    extent, intent = frozenset(c[0]), frozenset(c[1])
    try:
        return derive_attributes(ctx, extent) == intent and derive_objects(ctx, intent) == extent
    except ContractError:
        return False


def transpose(ctx: FormalContext) -> FormalContext:
    """Swap the roles of objects and attributes."""
    return FormalContext(ctx.incidence.T, ctx.attribute_names, ctx.object_names)


def leq(c1: Concept, c2: Concept) -> bool:
    """Concept order: ``c1 <= c2`` iff the extent of ``c1`` is inside that of ``c2``."""
    return frozenset(c1[0]) <= frozenset(c2[0])


def _ragged(seqs: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    offsets = np.zeros(len(seqs) + 1, dtype=np.int64)
    if seqs:
        offsets[1:] = np.cumsum([len(s) for s in seqs])
    flat = np.fromiter((x for s in seqs for x in s), dtype=np.int32, count=int(offsets[-1]))
    return flat, offsets


class ConceptSet:
    """Concepts of one context in canonical order (ascending lexicographic intent).

    Members live in two ragged integer arrays (``flat``/``offsets`` pairs),
    which keeps a few hundred thousand concepts cheap to hold and compare.
    Iteration yields :class:`Concept` tuples of frozensets.
    """

    __slots__ = ("_ext", "_ext_off", "_int", "_int_off")

    def __init__(self, ext, ext_off, int_, int_off, *, presorted=False):
        ext = np.ascontiguousarray(ext, dtype=np.int32)
        int_ = np.ascontiguousarray(int_, dtype=np.int32)
        ext_off = np.ascontiguousarray(ext_off, dtype=np.int64)
        int_off = np.ascontiguousarray(int_off, dtype=np.int64)
        if not presorted:
            from inclose._ragged import canonical_order, take_ragged

            order = canonical_order(int_, int_off)
            ext, ext_off = take_ragged(ext, ext_off, order)
            int_, int_off = take_ragged(int_, int_off, order)
        for a in (ext, ext_off, int_, int_off):
            a.setflags(write=False)
        self._ext, self._ext_off = ext, ext_off
        self._int, self._int_off = int_, int_off

    @classmethod
    def from_concepts(cls, concepts: Iterable) -> "ConceptSet":
        items = [(sorted(c[0]), sorted(c[1])) for c in concepts]
        ext, ext_off = _ragged([e for e, _ in items])
        int_, int_off = _ragged([i for _, i in items])
        return cls(ext, ext_off, int_, int_off)

    def __len__(self):
        return len(self._int_off) - 1

    def extent_of(self, k: int) -> tuple[int, ...]:
        return tuple(self._ext[self._ext_off[k]:self._ext_off[k + 1]].tolist())

    def intent_of(self, k: int) -> tuple[int, ...]:
        return tuple(self._int[self._int_off[k]:self._int_off[k + 1]].tolist())

    def __getitem__(self, k: int) -> Concept:
        if k < 0:
            k += len(self)
        if not 0 <= k < len(self):
            raise IndexError(k)
        return Concept(frozenset(self.extent_of(k)), frozenset(self.intent_of(k)))

    def __iter__(self) -> Iterator[Concept]:
        for k in range(len(self)):
            yield self[k]

    def intents(self) -> list[tuple[int, ...]]:
        return [self.intent_of(k) for k in range(len(self))]

    def extents(self) -> list[tuple[int, ...]]:
        return [self.extent_of(k) for k in range(len(self))]

    def as_set(self) -> set[Concept]:
        return set(self)

    def __contains__(self, c) -> bool:
        return Concept(frozenset(c[0]), frozenset(c[1])) in self.as_set()

    def __eq__(self, other):
        if not isinstance(other, ConceptSet):
            return NotImplemented
        return (
            np.array_equal(self._int_off, other._int_off)
            and np.array_equal(self._int, other._int)
            and np.array_equal(self._ext_off, other._ext_off)
            and np.array_equal(self._ext, other._ext)
        )

    def __repr__(self):
        return f"ConceptSet({len(self)} concepts)"

    def has_duplicates(self) -> bool:
        """True if two entries share an intent or two share an extent."""
        intents = self.intents()
        extents = self.extents()
        return len(set(intents)) != len(intents) or len(set(extents)) != len(extents)

    def swapped(self) -> "ConceptSet":
        """The concept set with extent and intent exchanged (concepts of the transpose)."""
        return ConceptSet(self._int, self._int_off, self._ext, self._ext_off)

    def with_concept(self, c) -> "ConceptSet":
        return ConceptSet.from_concepts([*self, c])

    def without_concept(self, c) -> "ConceptSet":
        c = Concept(frozenset(c[0]), frozenset(c[1]))
        return ConceptSet.from_concepts([x for x in self if x != c])
