"""
Vertical block storage
======================

The vertical engine keeps each column, and each extent, as a list of
(block index, block value) pairs. Block ``b`` covers objects
``b*w .. b*w + w - 1`` for word width ``w``; blocks with no member are not
stored. Intersecting an extent with a column ANDs whole words.

"""

import numpy as np

from inclose import FormalContext, VerticalEngineConfig, enumerate_horizontal, enumerate_vertical
from inclose.bitstore import (
    blocks_to_object_set,
    intersect_blocks,
    object_set_to_blocks,
    storage_bytes,
)

###############################################################################
# Five leading objects fit in one 32-bit block with value 0b11111 = 31.

x = object_set_to_blocks(range(5), width=32)
print(x, storage_bytes(x), "bytes")

y = object_set_to_blocks({3, 4, 40, 41}, width=32)
print(intersect_blocks(x, y), "->", sorted(blocks_to_object_set(intersect_blocks(x, y))))

###############################################################################
# The saving depends on how many members share a block, so row order
# matters. A context with clustered rows stores its extents in far fewer
# pairs than the same rows shuffled; the concepts are the same up to
# relabelling.

rng = np.random.default_rng(0)
proto = rng.random((12, 40)) < 0.3
clustered = np.repeat(proto, 40, axis=0) ^ (rng.random((480, 40)) < 0.02)
shuffled = clustered[rng.permutation(len(clustered))]

for label, inc in (("clustered", clustered), ("shuffled", shuffled)):
    ctx = FormalContext(inc)
    h = enumerate_horizontal(ctx).stats
    v32 = enumerate_vertical(ctx, VerticalEngineConfig(width=32)).stats
    v64 = enumerate_vertical(ctx, VerticalEngineConfig(width=64)).stats
    print(f"{label:>9}: {h.concept_count} concepts, per-object {h.extent_storage_bytes} bytes, "
          f"block pairs {v32.extent_storage_bytes} (32-bit) / {v64.extent_storage_bytes} (64-bit) bytes, "
          f"ratio {v32.extent_storage_bytes / h.extent_storage_bytes:.3f}")
