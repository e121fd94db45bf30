"""Brute-force ground truth for the engines.

Every subset of the smaller side of the context is closed and the distinct
closures are kept. Nothing here shares code with the engines beyond the
result container, and nothing is clever about pruning: 2^k closures for
``k = min(m, n)``, computed a few thousand at a time with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from inclose.context import Concept, ConceptSet, ContractError, FormalContext

MAX_ORACLE_DIM = 20
_LOW_BITS = 12


class OracleRefused(ContractError):
    pass


def _subset_meets(cols: np.ndarray) -> np.ndarray:
    """Row s holds the AND of the packed columns selected by the bits of s (all ones for s = 0)."""
    k, words = cols.shape
    out = np.empty((1 << k, words), dtype=np.uint8)
    out[0] = 0xFF
    for b in range(k):
        half = 1 << b
        out[half:2 * half] = out[:half] & cols[b]
    return out


def _closed_masks(inc: np.ndarray) -> np.ndarray:
    """Bitmasks (over the columns of ``inc``) of every closed column subset."""
    rows, k = inc.shape
    cols = np.packbits(inc.T, axis=1) if rows else np.zeros((k, 0), np.uint8)
    # pad bits are zero in every column; keep them zero in the "all ones" start too
    pad = np.packbits(np.ones(rows, bool)) if rows else np.zeros(0, np.uint8)
    cols_c = ~cols & pad
    lo = min(k, _LOW_BITS)
    low = _subset_meets(cols[:lo]) & pad
    high = _subset_meets(cols[lo:]) & pad
    weights = (np.int64(1) << np.arange(k, dtype=np.int64))
    found = []
    for h in range(len(high)):
        ext = low & high[h]
        # column j is in the closure iff the extent has no row missing j
        closed = np.zeros(len(ext), dtype=np.int64)
        for j in range(k):
            inside = ~np.any(ext & cols_c[j], axis=1)
            closed |= inside.astype(np.int64) * weights[j]
        found.append(np.unique(closed))
    return np.unique(np.concatenate(found)) if found else np.zeros(0, np.int64)


def brute_force_concepts(ctx: FormalContext) -> ConceptSet:
    """All concepts of ``ctx``: the distinct closures of every subset of the smaller side."""
    m, n = ctx.shape
    k = min(m, n)
    if k > MAX_ORACLE_DIM:
        raise OracleRefused(f"brute force needs min(m, n) <= {MAX_ORACLE_DIM}, context is {m}x{n}")
    by_objects = m < n
    inc = ctx.incidence.T if by_objects else ctx.incidence
    masks = _closed_masks(np.asarray(inc, dtype=bool))
    concepts = []
    for mask in masks.tolist():
        side = [j for j in range(k) if mask >> j & 1]
        other = np.flatnonzero(inc[:, side].all(axis=1)) if side else np.arange(inc.shape[0])
        if by_objects:
            concepts.append(Concept(frozenset(side), frozenset(other.tolist())))
        else:
            concepts.append(Concept(frozenset(other.tolist()), frozenset(side)))
    return ConceptSet.from_concepts(concepts)


@dataclass
class ConceptDiff:
    only_in_a: list = field(default_factory=list)
    only_in_b: list = field(default_factory=list)

    def __bool__(self):
        # truthy when there is a difference to report
        return bool(self.only_in_a or self.only_in_b)

    @property
    def empty(self) -> bool:
        return not self

    def describe(self, ctx: FormalContext | None = None, limit: int = 5) -> str:
        if self.empty:
            return "no differences"

        def fmt(c):
            if ctx is None:
                return f"({sorted(c.extent)}, {sorted(c.intent)})"
            objs = " ".join(ctx.object_names[g] for g in sorted(c.extent))
            attrs = " ".join(ctx.attribute_names[j] for j in sorted(c.intent))
            return f"({{{objs}}}, {{{attrs}}})"

        lines = []
        for label, items in (("only in a", self.only_in_a), ("only in b", self.only_in_b)):
            if items:
                lines.append(f"{label}: {len(items)}")
                lines += [f"  {fmt(c)}" for c in items[:limit]]
        return "\n".join(lines)


def diff_concept_sets(a: ConceptSet, b: ConceptSet) -> ConceptDiff:
    sa, sb = a.as_set(), b.as_set()
    key = lambda c: (sorted(c.intent), sorted(c.extent))
    return ConceptDiff(sorted(sa - sb, key=key), sorted(sb - sa, key=key))


@dataclass(frozen=True)
class RandomContextSpec:
    m: int
    n: int
    density: float
    seed: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ContractError("dimensions must be non-negative")
        if not 0.0 <= self.density <= 1.0:
            raise ContractError(f"density must lie in [0, 1], got {self.density}")


def random_context(spec: RandomContextSpec) -> FormalContext:
    rng = np.random.default_rng(spec.seed)
    return FormalContext(rng.random((spec.m, spec.n)) < spec.density)
