from pathlib import Path

import pytest

from inclose.context import Concept, FormalContext
from inclose.formats import read_context

DATA = Path(__file__).parent / "data"


def load_table(name: str) -> FormalContext:
    return read_context(DATA / f"{name}.cxt")


def named(ctx: FormalContext, objects: str, attributes: str) -> Concept:
    """Concept from the tables' labels: objects "5 6", attributes "a4 a5"."""
    return Concept(
        frozenset(ctx.object_index(o) for o in objects.split()),
        frozenset(ctx.attribute_index(a) for a in attributes.split()),
    )


# concept lists as printed under the two example contexts, numbered as there
TABLE2 = {
    0: ("1 2 3 4 5 6", ""),
    1: ("4 5 6", "a5"),
    2: ("1 6", "a3"),
    3: ("1 2", "a2"),
    4: ("2 3", "a1"),
    5: ("2", "a1 a2"),
    6: ("1", "a2 a3"),
    7: ("5 6", "a4 a5"),
    8: ("6", "a3 a4 a5"),
    9: ("", "a1 a2 a3 a4 a5"),
}

TABLE4 = {
    0: ("1 2 3 4 5 6", ""),
    1: ("5 6", "a5 a4"),
    2: ("4 5 6", "a4"),
    3: ("1 6", "a3"),
    4: ("1 2", "a2"),
    5: ("2 3", "a1"),
    6: ("2", "a1 a2"),
    7: ("1", "a2 a3"),
    8: ("6", "a3 a4 a5"),
    9: ("", "a1 a2 a3 a4 a5"),
}


@pytest.fixture
def table1() -> FormalContext:
    return load_table("table1")


@pytest.fixture
def table3() -> FormalContext:
    return load_table("table3")


@pytest.fixture
def table2_concepts(table1):
    return {k: named(table1, *v) for k, v in TABLE2.items()}


@pytest.fixture
def table4_concepts(table3):
    return {k: named(table3, *v) for k, v in TABLE4.items()}
