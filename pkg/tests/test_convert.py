from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covred.convert import convert_table
from covred.core import validate
from covred.errors import DocumentError


def _blocks(system, c=0):
    return [[system.label(x) for x in b] for b in system.coverings[c].blocks]


def test_nominal_partition():
    rows = [{"a": v, "d": "0"} for v in "aabb"]
    system = convert_table(rows, "d")
    assert _blocks(system) == [["r1", "r2"], ["r3", "r4"]]


def test_numeric_neighbourhoods():
    rows = [{"a": v, "d": "0"} for v in (1, 2, 5)]
    system = convert_table(rows, "d", {"a": 1})
    assert _blocks(system) == [["r1", "r2"], ["r3"]]
    assert any("duplicate" in d for d in system.diagnostics)


def test_radius_zero_gives_singletons():
    rows = [{"a": v, "d": "0"} for v in (1, 2, 5)]
    assert _blocks(convert_table(rows, "d", {"a": 0})) == [["r1"], ["r2"], ["r3"]]


def test_decision_classes():
    rows = [{"a": "x", "d": v} for v in "yny"]
    system = convert_table(rows, "d")
    assert [list(c) for c in system.decision.classes] == [[0, 2], [1]]


@pytest.mark.parametrize(
    "rows, kwargs, message",
    [
        ([{"a": "1", "d": "0"}], {"radius": {"d": 1}}, "nominal"),
        ([{"a": "", "d": "0"}], {}, "missing"),
        ([{"a": "?", "d": "0"}], {}, "missing"),
        ([{"a": "x", "d": "0"}], {"radius": {"a": 1}}, "non-numeric"),
        ([{"a": "1", "d": "0"}], {"radius": {"a": -1}}, "non-negative"),
        ([{"a": "1", "d": "0"}], {"radius": {"b": 1}}, "not in table"),
        ([{"d": "0"}], {}, "no condition"),
        ([], {}, "no rows"),
    ],
)
def test_errors(rows, kwargs, message):
    with pytest.raises(DocumentError, match=message):
        convert_table(rows, "d", **kwargs)


def test_missing_decision_column():
    with pytest.raises(DocumentError, match="decision column"):
        convert_table([{"a": "1"}], "d")


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.tuples(st.sampled_from("abc"), st.integers(0, 20), st.sampled_from("yn")),
        min_size=1,
        max_size=15,
    ),
    st.integers(0, 5),
)
def test_output_always_valid(rows, radius):
    table = [{"nom": a, "num": b, "d": d} for a, b, d in rows]
    system = convert_table(table, "d", {"num": radius})
    assert validate(system) == []
    for x, b in enumerate(rows):
        near = {y for y, r in enumerate(rows) if abs(r[1] - b[1]) <= radius}
        assert any(set(k) == near for k in system.coverings[1].blocks)
