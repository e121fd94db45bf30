import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inclose.bitstore import (
    BlockExtent,
    WordWidth,
    as_width,
    block_count,
    blocks_to_object_set,
    cardinality,
    intersect_blocks,
    is_subset_blocks,
    object_set_to_blocks,
    pack_horizontal,
    pack_vertical,
    storage_bytes,
    unpack_horizontal,
    unpack_vertical,
    vertical_bytes,
)
from inclose.context import ContractError, FormalContext


def blocks(pairs, width=32):
    return BlockExtent.from_pairs(pairs, width)


def test_width_values():
    assert as_width(32) is WordWidth.W32 and as_width(64) is WordWidth.W64
    with pytest.raises(ContractError):
        as_width(16)


def test_block_count():
    assert block_count(0, 32) == 0
    assert block_count(1, 32) == 1
    assert block_count(32, 32) == 1
    assert block_count(33, 32) == 2
    assert block_count(8124, 64) == 127


def test_pack_horizontal_examples(table1):
    h = pack_horizontal(table1, 32)
    # object 6 has a3 a4 a5, bits 2, 3, 4
    assert h.rows[5].tolist() == [28]
    zero = pack_horizontal(FormalContext(np.zeros((2, 5), bool)), 64)
    assert not zero.rows.any()
    wide = pack_horizontal(FormalContext(np.ones((1, 65), bool)), 64)
    assert wide.words_per_row == 2
    # pad bits of the last word stay clear
    assert wide.rows[0, 1] == 1


def test_pack_vertical_examples(table1):
    v = pack_vertical(table1, 32)
    # column a5 holds objects 4, 5, 6 (0-based 3, 4, 5)
    assert v.columns[4] == blocks([(0, 0b111000)])
    assert blocks_to_object_set(v.columns[3]) == {4, 5}
    empty = pack_vertical(FormalContext(np.zeros((40, 1), bool)), 32)
    assert len(empty.columns[0]) == 0


def test_block_extent_invariants():
    with pytest.raises(ContractError):
        blocks([(1, 1), (0, 1)])
    with pytest.raises(ContractError):
        blocks([(0, 0)])
    with pytest.raises(ContractError):
        blocks([(0, 1), (0, 2)])


def test_intersect_examples(table1):
    v = pack_vertical(table1, 32)
    assert blocks_to_object_set(intersect_blocks(v.columns[4], v.columns[3])) == {4, 5}
    x = blocks([(0, 0b10110), (2, 0b1)])
    assert intersect_blocks(x, x) == x
    y = blocks([(0, 0b00110), (1, 0b1)])
    assert intersect_blocks(x, y) == blocks([(0, 0b00110)])


def test_width_mismatch():
    with pytest.raises(ContractError):
        intersect_blocks(blocks([(0, 1)], 32), blocks([(0, 1)], 64))
    with pytest.raises(ContractError):
        is_subset_blocks(blocks([(0, 1)], 32), blocks([(0, 1)], 64))


def test_subset_examples():
    s56 = object_set_to_blocks({4, 5}, 6, 32)
    s456 = object_set_to_blocks({3, 4, 5}, 6, 32)
    assert is_subset_blocks(s56, s456)
    assert is_subset_blocks(BlockExtent.empty(32), s56)
    assert not is_subset_blocks(s456, s56)


def test_cardinality_examples():
    assert cardinality(blocks([(0, 31)])) == 5
    assert cardinality(BlockExtent.empty(32)) == 0
    assert cardinality(blocks([(0, 1), (3, 1)])) == 2


def test_object_set_conversion_examples():
    assert blocks_to_object_set(blocks([(0, 31)])) == {0, 1, 2, 3, 4}
    assert len(object_set_to_blocks(set(), 10, 32)) == 0
    assert object_set_to_blocks({0, 32}, 64, 32) == blocks([(0, 1), (1, 1)])
    with pytest.raises(ContractError):
        object_set_to_blocks({10}, 10, 32)


def test_storage_examples():
    assert vertical_bytes(1, 32) == 8
    assert storage_bytes(blocks([(0, 1)])) == 8
    assert storage_bytes(blocks([(0, 1)], 64)) == 16
    assert storage_bytes([range(8)]) == 32
    assert storage_bytes([{1, 2}, {3}]) == 12


# -- properties ---------------------------------------------------------------

PROPS = settings(max_examples=150, deadline=None, derandomize=True)
widths = st.sampled_from([32, 64])


@st.composite
def matrices(draw, max_m=150, max_n=150):
    m = draw(st.integers(0, max_m))
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.0, 0.1, 0.5, 0.9, 1.0]))
    return np.random.default_rng(seed).random((m, n)) < density


@st.composite
def object_sets(draw, m=300):
    return draw(st.frozensets(st.integers(0, m - 1), max_size=80))


@PROPS
@given(matrices(), widths)
def test_pack_round_trips(inc, width):
    ctx = FormalContext(inc)
    assert np.array_equal(unpack_horizontal(pack_horizontal(ctx, width)), inc)
    assert np.array_equal(unpack_vertical(pack_vertical(ctx, width)), inc)


@PROPS
@given(matrices(), widths)
def test_horizontal_pad_bits_zero(inc, width):
    h = pack_horizontal(FormalContext(inc), width)
    n = inc.shape[1]
    if h.rows.size and n % width:
        assert not np.any(h.rows[:, -1] >> np.array(n % width, h.rows.dtype))


@PROPS
@given(object_sets(), object_sets(), widths)
def test_intersection_matches_sets(a, b, width):
    x, y = object_set_to_blocks(a, width=width), object_set_to_blocks(b, width=width)
    z = intersect_blocks(x, y)
    assert blocks_to_object_set(z) == a & b
    assert np.all(z.value != 0) and np.all(np.diff(z.index) > 0)
    assert cardinality(z) <= min(cardinality(x), cardinality(y))


@PROPS
@given(object_sets(), object_sets(), widths)
def test_subset_matches_intersection(a, b, width):
    x, y = object_set_to_blocks(a, width=width), object_set_to_blocks(b, width=width)
    assert is_subset_blocks(x, y) == (intersect_blocks(x, y) == x) == (a <= b)


@PROPS
@given(object_sets(), widths)
def test_object_set_round_trip(a, width):
    x = object_set_to_blocks(a, width=width)
    assert blocks_to_object_set(x) == a
    assert cardinality(x) == len(a)
