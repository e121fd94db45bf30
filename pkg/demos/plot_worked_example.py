"""
Concepts of a six-object context
================================

A formal context is a 0/1 table. A concept is a pair (extent, intent)
where the extent is exactly the set of objects sharing the intent, and the
intent is exactly the set of attributes shared by the extent.

"""

import numpy as np

from inclose import (
    FormalContext,
    close_attributes,
    derive_attributes,
    derive_objects,
    enumerate_horizontal,
    enumerate_vertical,
)
from inclose.formats import write_concept_tree_json, write_concepts_text

rows = ["01100", "11000", "10000", "00001", "00011", "00111"]
ctx = FormalContext(
    np.array([[c == "1" for c in r] for r in rows]),
    object_names=[str(g) for g in range(1, 7)],
    attribute_names=[f"a{j}" for j in range(1, 6)],
)

###############################################################################
# The two derivation operators. Objects are 0-based internally, so object
# "5" is index 4.

a4 = ctx.attribute_index("a4")
ext = derive_objects(ctx, {a4})
print("{a4}* =", sorted(ctx.object_names[g] for g in ext))
print("{5,6}* =", sorted(ctx.attribute_names[j] for j in derive_attributes(ctx, ext)))
print(close_attributes(ctx, {a4}))

###############################################################################
# Enumerating everything. Both engines give the same ten concepts; the text
# form lists one concept per line, objects before the semicolon.

concepts, stats = enumerate_vertical(ctx)
print(write_concepts_text(concepts, ctx))
assert concepts == enumerate_horizontal(ctx).concepts

###############################################################################
# The scan descends from the last attribute. At the top concept, a4 yields
# {5,6}, but a5 (already scanned) contains that extent, so the canonicity
# test rejects it and {5,6} is found later as a child of ({4,5,6}, {a5}).

print("canonicity failures:", stats.canonicity_failures)
result = enumerate_vertical(ctx)
tree = result.tree
for c in range(len(tree)):
    p = int(tree.parent[c])
    j = int(tree.spawn_attribute[c])
    print(f"C{c}: parent {'-' if p < 0 else f'C{p}'}, found at {ctx.attribute_names[j] if j >= 0 else '-'}, "
          f"intent {[ctx.attribute_names[a] for a in tree.intent(c)]}")

###############################################################################
# The bottom concept (no objects, every attribute) is never spawned when
# empty intersections are skipped; the default policy adds it afterwards.
# The spawn tree is available as JSON.

print(write_concept_tree_json(tree, ctx, source="demo", indent=None)[:200], "...")
