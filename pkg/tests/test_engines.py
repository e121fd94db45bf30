import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inclose import bitstore
from inclose._engine import BudgetExhausted, IncludeBottom
from inclose.bitstore import object_set_to_blocks, pack_horizontal, pack_vertical
from inclose.context import (
    Concept,
    ContractError,
    FormalContext,
    derive_objects,
    is_concept,
    transpose,
)
from inclose.horizontal import HorizontalEngineConfig, enumerate_horizontal, is_canonical_horizontal
from inclose.oracle import brute_force_concepts
from inclose.vertical import (
    ExtentArena,
    GlobalQueue,
    VerticalEngineConfig,
    concept_tree,
    enumerate_vertical,
    is_canonical_vertical,
    root_extent,
    run_arena,
    spawn_child,
)


def horizontal(ctx, width=64, **kw):
    return enumerate_horizontal(ctx, HorizontalEngineConfig(width=width, **kw))


def vertical(ctx, width=64, **kw):
    return enumerate_vertical(ctx, VerticalEngineConfig(width=width, **kw))


ENGINES = [
    pytest.param(horizontal, 32, id="horizontal-w32"),
    pytest.param(horizontal, 64, id="horizontal-w64"),
    pytest.param(vertical, 32, id="vertical-w32"),
    pytest.param(vertical, 64, id="vertical-w64"),
]


# -- worked examples -------------------------------------------------------------

@pytest.mark.parametrize("run,width", ENGINES)
def test_table1_gives_table2(run, width, table1, table2_concepts):
    concepts, stats = run(table1, width)
    assert concepts.as_set() == set(table2_concepts.values())
    assert stats.concept_count == 10


@pytest.mark.parametrize("run,width", ENGINES)
def test_table3_gives_table4(run, width, table3, table4_concepts):
    concepts, _ = run(table3, width)
    assert concepts.as_set() == set(table4_concepts.values())


@pytest.mark.parametrize("run,width", ENGINES)
def test_small_shapes(run, width):
    ones = FormalContext(np.ones((3, 4), bool))
    assert run(ones, width).concepts.as_set() == {Concept(frozenset(range(3)), frozenset(range(4)))}

    diag = FormalContext(np.eye(3, dtype=bool))
    assert run(diag, width).concepts == brute_force_concepts(diag)
    assert len(run(diag, width).concepts) == 5

    zeros = FormalContext(np.zeros((4, 4), bool))
    assert run(zeros, width).concepts.as_set() == {
        Concept(frozenset(range(4)), frozenset()),
        Concept(frozenset(), frozenset(range(4))),
    }


@pytest.mark.parametrize("run,width", ENGINES)
def test_degenerate_contexts(run, width):
    for shape in [(0, 0), (0, 3), (3, 0), (1, 1)]:
        ctx = FormalContext(np.zeros(shape, bool))
        assert run(ctx, width).concepts == brute_force_concepts(ctx), shape


def test_canonicity_examples(table1, table3):
    # {5,6} found at a4 is already inside a5's column
    c56 = {4, 5}
    assert not is_canonical_horizontal(c56, 3, set(), pack_horizontal(table1, 32))
    assert not is_canonical_vertical(object_set_to_blocks(c56, 6, 32), 3, set(), pack_vertical(table1, 32))
    # with a4 and a5 swapped, {4,5,6} at a4 is new
    c456 = {3, 4, 5}
    assert is_canonical_horizontal(c456, 3, set(), pack_horizontal(table3, 64))
    assert is_canonical_vertical(object_set_to_blocks(c456, 6, 64), 3, set(), pack_vertical(table3, 64))
    # nothing lies above the last attribute
    assert is_canonical_horizontal(c56, 4, set(), pack_horizontal(table1, 64))
    assert is_canonical_vertical(object_set_to_blocks(c56, 6, 64), 4, set(), pack_vertical(table1, 64))
    # attributes in B are ignored
    assert is_canonical_horizontal(c56, 3, {4}, pack_horizontal(table1, 64))
    assert is_canonical_vertical(object_set_to_blocks(c56, 6, 64), 3, {4}, pack_vertical(table1, 64))


def test_spawn_child_counter():
    arena = ExtentArena(bitstore.WordWidth.W32)
    arena.append(root_extent(40, 32))
    queue = GlobalQueue()
    first = spawn_child(queue, arena, object_set_to_blocks({1, 33}, 40, 32), 3, 0)
    assert first == 1 and queue.parent[1] == 0 and queue.spawn_attribute[1] == 3
    second = spawn_child(queue, arena, object_set_to_blocks({2}, 40, 32), 1, 1)
    assert second == 2
    assert arena.start == sorted(set(arena.start))
    assert arena.extent(1) == object_set_to_blocks({1, 33}, 40, 32)
    with pytest.raises(ContractError):
        spawn_child(queue, arena, object_set_to_blocks({2}, 40, 32), 0, 7)


def test_root_spawns_table1(table1):
    queue, arena = run_arena(table1, VerticalEngineConfig(width=32))
    roots = [c for c in range(queue.highc) if queue.parent[c] == 0]
    # a5, a3, a2, a1 pass; a4 fails
    assert [queue.spawn_attribute[c] for c in roots] == [4, 2, 1, 0]
    assert all(queue.parent[c] < c for c in range(1, queue.highc))
    assert list(arena.start) == sorted(arena.start)


@pytest.mark.parametrize("run", [horizontal, vertical])
def test_tree_table1(run, table1, table2_concepts):
    tree = run(table1).tree
    # node numbers follow the printed numbering
    for k in range(9):
        c = table2_concepts[k]
        assert frozenset(tree.extent(k)) == c.extent and frozenset(tree.intent(k)) == c.intent
    assert [tree.spawn_attribute[c] for c in tree.children(0)] == [4, 2, 1, 0]
    assert tree.parent[7] == 1
    assert tree.parent[8] == 7 and tree.spawn_attribute[8] == 2
    assert tree.parent[5] == 3 and tree.parent[6] == 2
    assert tree.edge_count == len(tree) - 1


@pytest.mark.parametrize("run", [horizontal, vertical])
def test_tree_table3(run, table3, table4_concepts):
    tree = run(table3).tree
    for k in range(9):
        c = table4_concepts[k]
        assert frozenset(tree.extent(k)) == c.extent and frozenset(tree.intent(k)) == c.intent
    assert tree.parent[8] == 1
    assert tree.parent[6] == 4 and tree.parent[7] == 3


def test_concept_tree_from_queue(table1):
    queue, _ = run_arena(table1)
    tree = concept_tree(queue)
    assert len(tree) == 9 and tree.parent[8] == 7
    single = concept_tree(run_arena(FormalContext(np.ones((2, 2), bool)))[0])
    assert len(single) == 1 and single.parent[0] == -1


@pytest.mark.parametrize("run", [horizontal, vertical])
def test_bottom_policies(run, table1):
    bottom = Concept(frozenset(), frozenset(range(5)))
    assert bottom in run(table1, include_bottom="auto").concepts
    assert bottom in run(table1, include_bottom="always").concepts
    never = run(table1, include_bottom=IncludeBottom.NEVER).concepts
    assert bottom not in never and len(never) == 9
    # without empty-extent skipping the bottom concept is reached directly
    raw = run(table1, empty_skip=False, include_bottom="never").concepts
    assert raw == never
    # with a full row, the bottom concept is not (∅, M) and nothing is added
    full_row = FormalContext(np.vstack([table1.incidence, np.ones((1, 5), bool)]))
    got = run(full_row).concepts
    assert got == brute_force_concepts(full_row)
    assert all(c.extent for c in got)


def test_budget_exhausted():
    ctx = FormalContext(np.random.default_rng(0).random((30, 300)) < 0.3)
    with pytest.raises(BudgetExhausted) as info:
        horizontal(ctx, local_queue_memory_budget=1000)
    e = info.value
    assert e.depth >= 0 and e.needed_bytes > e.budget_bytes == 1000
    assert "depth" in str(e)
    with pytest.raises(ContractError):
        HorizontalEngineConfig(local_queue_memory_budget=0)


def test_stats_populated(table1):
    for run in (horizontal, vertical):
        s = run(table1, 32).stats
        assert s.concept_count == 10 and s.elapsed >= 0
        assert s.extent_storage_bytes > 0 and s.peak_queue_bytes > 0
        assert s.canonicity_failures >= 1 and s.raw_concept_count == 9


# -- properties ---------------------------------------------------------------

PROPS = settings(max_examples=120, deadline=None, derandomize=True)


@st.composite
def contexts(draw, max_dim=12):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    density = draw(st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]))
    seed = draw(st.integers(0, 2**32 - 1))
    return FormalContext(np.random.default_rng(seed).random((m, n)) < density)


@PROPS
@given(contexts(), st.sampled_from([32, 64]))
def test_engines_match_oracle(ctx, width):
    ref = brute_force_concepts(ctx)
    h = horizontal(ctx, width).concepts
    v = vertical(ctx, width).concepts
    assert h == ref
    assert v == ref


@PROPS
@given(contexts())
def test_no_duplicate_intents_before_normalisation(ctx):
    for run in (horizontal, vertical):
        tree = run(ctx, empty_skip=False).tree
        intents = [tree.intent(c) for c in range(len(tree))]
        assert len(set(intents)) == len(intents)


@PROPS
@given(contexts())
def test_skip_set_soundness(ctx):
    for run in (horizontal, vertical):
        on = run(ctx, empty_skip=True, include_bottom="never").concepts
        off = run(ctx, empty_skip=False, include_bottom="never").concepts
        assert on == off
        # with auto normalisation the two runs agree exactly
        assert run(ctx, empty_skip=True).concepts == run(ctx, empty_skip=False).concepts


@PROPS
@given(contexts())
def test_transpose_symmetry(ctx):
    assert vertical(transpose(ctx)).concepts == vertical(ctx).concepts.swapped()
    assert horizontal(transpose(ctx)).concepts == horizontal(ctx).concepts.swapped()


@PROPS
@given(contexts())
def test_tree_and_arena_sanity(ctx):
    for run in (horizontal, vertical):
        tree = run(ctx).tree
        assert tree.edge_count == len(tree) - 1
        assert all(tree.parent[c] < c for c in range(1, len(tree)))
        for c in range(len(tree)):
            assert set(tree.extent(c)) == derive_objects(ctx, tree.intent(c))
            assert is_concept(ctx, Concept(frozenset(tree.extent(c)), frozenset(tree.intent(c))))


@PROPS
@given(contexts(), st.integers(0, 2**32 - 1))
def test_count_invariant_under_column_permutation(ctx, seed):
    perm = np.random.default_rng(seed).permutation(ctx.attribute_count)
    shuffled = FormalContext(ctx.incidence[:, perm])
    assert len(vertical(shuffled).concepts) == len(vertical(ctx).concepts)
    assert len(horizontal(shuffled).concepts) == len(horizontal(ctx).concepts)


def test_wide_contexts_match_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m, n = int(rng.integers(1, 10)), int(rng.integers(60, 200))
        ctx = FormalContext(rng.random((m, n)) < rng.choice([0.1, 0.5, 0.9]))
        ref = brute_force_concepts(ctx)
        for width in (32, 64):
            assert horizontal(ctx, width).concepts == ref
            assert vertical(ctx, width).concepts == ref
