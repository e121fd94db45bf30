"""
Timing both engines on the pinned datasets
==========================================

The two pinned contexts are mushroom (a complete-case subset, 100 items)
and nursery (full factorial feature matrix, 27 items). Kernels are
compiled once up front so the timings cover enumeration only.

Transposed runs are slow: transposed mushroom has thousands of columns
and takes about a minute per vertical run, while the horizontal engine
stops at once with its queue budget exhausted. Set ``TRANSPOSED = True``
to include them.

"""

from inclose import transpose
from inclose.bench import format_table, run_bench, storage_ratios, warmup
from inclose.datasets import PUBLISHED_COUNTS, REFERENCE_COUNTS, load_dataset

TRANSPOSED = False

warmup()
sets = {name: load_dataset(name) for name in ("mushroom", "nursery")}
if TRANSPOSED:
    sets.update({f"{k}^T": transpose(v) for k, v in list(sets.items())})

rows = run_bench(sets, repeats=3)
print(format_table(rows))

###############################################################################
# Per-object extent lists against block pairs, per word width.

for (name, width), ratio in sorted(storage_ratios(rows).items()):
    print(f"{name} w{width}: {ratio:.3f}")

###############################################################################
# Counts of the pinned files, next to the counts published for the original
# binarizations (not available here).

for name in REFERENCE_COUNTS:
    print(f"{name}: pinned {REFERENCE_COUNTS[name]}, published {PUBLISHED_COUNTS[name]}")
