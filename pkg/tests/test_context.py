import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inclose.context import (
    Concept,
    ConceptSet,
    ContractError,
    FormalContext,
    close_attributes,
    derive_attributes,
    derive_objects,
    is_concept,
    leq,
    transpose,
)
from conftest import named


def idx(ctx, names):
    return {ctx.attribute_index(a) for a in names.split()}


def objs(ctx, labels):
    return {ctx.object_index(o) for o in labels.split()}


# -- examples -------------------------------------------------------------------

def test_derive_attributes_examples(table1):
    assert derive_attributes(table1, objs(table1, "5 6")) == idx(table1, "a4 a5")
    assert derive_attributes(table1, objs(table1, "1")) == idx(table1, "a2 a3")
    assert derive_attributes(table1, set()) == set(range(5))


def test_derive_objects_examples(table1):
    assert derive_objects(table1, idx(table1, "a4")) == objs(table1, "5 6")
    assert derive_objects(table1, idx(table1, "a5")) == objs(table1, "4 5 6")
    assert derive_objects(table1, set()) == set(range(6))


def test_derivation_rejects_out_of_range(table1):
    with pytest.raises(ContractError):
        derive_attributes(table1, {6})
    with pytest.raises(ContractError):
        derive_objects(table1, {-1})


def test_close_attributes_examples(table1):
    assert close_attributes(table1, idx(table1, "a4")) == named(table1, "5 6", "a4 a5")
    top = close_attributes(table1, set())
    assert top.extent == set(range(6)) and top.intent == set()
    # a1 and a5 never occur together, so their closure is the bottom concept
    assert close_attributes(table1, idx(table1, "a1 a5")) == Concept(frozenset(), frozenset(range(5)))


def test_is_concept_examples(table1):
    assert is_concept(table1, named(table1, "5 6", "a4 a5"))
    assert not is_concept(table1, named(table1, "5 6", "a4"))
    assert is_concept(table1, close_attributes(table1, set()))


def test_leq_examples(table2_concepts):
    c = table2_concepts
    assert leq(c[8], c[7])
    assert leq(c[3], c[3])
    assert not leq(c[4], c[3])


def test_transpose_examples(table1):
    assert transpose(transpose(table1)) == table1
    t = transpose(table1)
    assert t.shape == (5, 6)
    assert t.object_names == table1.attribute_names
    one = FormalContext(np.ones((1, 1), bool))
    assert np.array_equal(transpose(one).incidence, one.incidence)


def test_context_is_immutable(table1):
    with pytest.raises(ValueError):
        table1.incidence[0, 0] = True
    src = np.zeros((2, 2), bool)
    ctx = FormalContext(src)
    src[0, 0] = True
    assert not ctx.incidence[0, 0]


def test_name_lengths_checked():
    with pytest.raises(ContractError):
        FormalContext(np.zeros((2, 2), bool), object_names=["x"])


def test_concept_set_order_and_duplicates(table2_concepts):
    cs = ConceptSet.from_concepts(reversed(list(table2_concepts.values())))
    assert cs.intents() == sorted(cs.intents())
    assert not cs.has_duplicates()
    assert cs == ConceptSet.from_concepts(table2_concepts.values())
    c9 = table2_concepts[9]
    assert c9 in cs and c9 not in cs.without_concept(c9)


# -- operator laws ------------------------------------------------------------------

@st.composite
def context_and_sets(draw, max_dim=8):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    bits = draw(st.lists(st.booleans(), min_size=m * n, max_size=m * n))
    ctx = FormalContext(np.array(bits, bool).reshape(m, n))
    subset = lambda k: st.frozensets(st.integers(0, k - 1)) if k else st.just(frozenset())
    a1, a2 = draw(subset(m)), draw(subset(m))
    b1, b2 = draw(subset(n)), draw(subset(n))
    return ctx, a1, a2, b1, b2


LAWS = settings(max_examples=200, deadline=None, derandomize=True)


@LAWS
@given(context_and_sets())
def test_antitone(data):
    ctx, a1, a2, b1, b2 = data
    assert derive_attributes(ctx, a1 | a2) <= derive_attributes(ctx, a1)
    assert derive_objects(ctx, b1 | b2) <= derive_objects(ctx, b1)


@LAWS
@given(context_and_sets())
def test_extensive(data):
    ctx, a1, _, b1, _ = data
    assert a1 <= derive_objects(ctx, derive_attributes(ctx, a1))
    assert b1 <= derive_attributes(ctx, derive_objects(ctx, b1))


@LAWS
@given(context_and_sets())
def test_triple_star(data):
    ctx, a1, _, b1, _ = data
    a_star = derive_attributes(ctx, a1)
    assert a_star == derive_attributes(ctx, derive_objects(ctx, a_star))
    b_star = derive_objects(ctx, b1)
    assert b_star == derive_objects(ctx, derive_attributes(ctx, b_star))


@LAWS
@given(context_and_sets())
def test_galois_connection(data):
    ctx, a1, _, b1, _ = data
    assert (a1 <= derive_objects(ctx, b1)) == (b1 <= derive_attributes(ctx, a1))


@LAWS
@given(context_and_sets())
def test_union_law(data):
    ctx, a1, a2, b1, b2 = data
    assert derive_attributes(ctx, a1 | a2) == derive_attributes(ctx, a1) & derive_attributes(ctx, a2)
    assert derive_objects(ctx, b1 | b2) == derive_objects(ctx, b1) & derive_objects(ctx, b2)


@LAWS
@given(context_and_sets())
def test_intersection_law(data):
    ctx, a1, a2, b1, b2 = data
    assert derive_attributes(ctx, a1 & a2) >= derive_attributes(ctx, a1) | derive_attributes(ctx, a2)
    assert derive_objects(ctx, b1 & b2) >= derive_objects(ctx, b1) | derive_objects(ctx, b2)


@LAWS
@given(context_and_sets())
def test_closures_are_concepts_and_leq_agrees(data):
    ctx, _, _, b1, b2 = data
    c1, c2 = close_attributes(ctx, b1), close_attributes(ctx, b2)
    assert is_concept(ctx, c1) and is_concept(ctx, c2)
    assert leq(c1, c2) == (c2.intent <= c1.intent)
    assert leq(c2, c1) == (c1.intent <= c2.intent)


@LAWS
@given(context_and_sets())
def test_transpose_involution(data):
    ctx = data[0]
    assert transpose(transpose(ctx)) == ctx
    assert np.array_equal(transpose(ctx).incidence, ctx.incidence.T)
