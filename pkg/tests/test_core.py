from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covred.core import (
    Covering,
    CoveringSystem,
    DecisionPartition,
    ObjectSet,
    build_system,
    union_covering,
    validate,
)
from covred.errors import SelectionError, ValidationError

from conftest import systems

N = 12
sets_ = st.sets(st.integers(0, N - 1)).map(lambda s: ObjectSet.of(s, N))


def test_objectset_basics():
    a = ObjectSet.of([0, 2, 5], 8)
    assert list(a) == [0, 2, 5]
    assert len(a) == 3
    assert 2 in a and 3 not in a
    assert a.complement() == ObjectSet.of([1, 3, 4, 6, 7], 8)
    with pytest.raises(ValueError):
        ObjectSet.of([8], 8)


def test_objectset_size_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        ObjectSet.of([1], 4) | ObjectSet.of([1], 5)
    with pytest.raises(ValueError):
        ObjectSet.of([1], 4) <= ObjectSet.of([1], 5)


def test_dense_iteration():
    ids = list(range(0, 300, 2))
    assert list(ObjectSet.of(ids, 300)) == ids


@given(sets_, sets_)
def test_subset_antisymmetry(a, b):
    assert (a <= b and b <= a) == (a == b)


@given(sets_, sets_, sets_)
def test_union_intersection_laws(a, b, c):
    assert a | b == b | a
    assert a & b == b & a
    assert (a | b) | c == a | (b | c)
    assert (a & b) & c == a & (b & c)
    assert a & (b | c) == (a & b) | (a & c)
    assert (a - b) & b == ObjectSet.empty(N)
    assert set(a | b) == set(a) | set(b)


def test_golden_base_valid(base):
    assert validate(base) == []
    assert base.universe_size == 8
    assert len(base.coverings) == 5
    assert len(base.decision) == 3


def test_uncovered_object_reported():
    system = build_system(
        5, [("C", [[0, 1], [2, 3]])], [[0, 1, 2, 3, 4]], check=False
    )
    problems = validate(system)
    assert [p.kind for p in problems] == ["uncovered object"]
    assert problems[0].covering == 0


def test_overlapping_classes_reported():
    system = build_system(3, [("C", [[0, 1, 2]])], [[0, 1], [1, 2]], check=False)
    assert [p.kind for p in validate(system)] == ["overlap"]


def test_build_system_raises_on_violation():
    with pytest.raises(ValidationError) as err:
        build_system(3, [("C", [[0]])], [[0, 1, 2]])
    assert len(err.value.violations) == 2


def test_duplicate_blocks_removed_with_note(deleted):
    cov = deleted.coverings[4]
    assert len(cov.blocks) == 4
    assert any("duplicate block" in d for d in deleted.diagnostics)


def test_union_covering(base):
    assert union_covering(base, [0]).blocks == base.coverings[0].blocks
    both = union_covering(base, [0, 1])
    # {x5,x6} is in both coverings
    assert len(both.blocks) == 11
    assert both.name == "C1+C2"
    with pytest.raises(SelectionError, match="empty covering selection"):
        union_covering(base, [])


def test_union_covering_deleted(deleted):
    assert len(union_covering(deleted, [4]).blocks) == 4


@settings(max_examples=60, deadline=None)
@given(systems())
def test_union_of_all_covers_universe(system):
    cov = union_covering(system, range(len(system.coverings)))
    acc = 0
    for b in cov.blocks:
        acc |= b.bits
    assert acc == (1 << system.universe_size) - 1


def _mutations(system: CoveringSystem):
    n = system.universe_size
    cov0 = system.coverings[0]
    yield "empty block", CoveringSystem(
        n,
        (Covering(cov0.name, cov0.blocks + (ObjectSet.empty(n),)),) + system.coverings[1:],
        system.decision,
    )
    yield "duplicate block", CoveringSystem(
        n, (Covering(cov0.name, cov0.blocks + cov0.blocks[:1]),) + system.coverings[1:], system.decision
    )
    yield "size mismatch", CoveringSystem(
        n,
        (Covering(cov0.name, cov0.blocks + (ObjectSet.full(n + 1),)),) + system.coverings[1:],
        system.decision,
    )
    yield "empty class", CoveringSystem(
        n, system.coverings, DecisionPartition(system.decision.classes + (ObjectSet.empty(n),))
    )
    classes = system.decision.classes
    yield "unclassified object", CoveringSystem(
        n, system.coverings, DecisionPartition(tuple(c - ObjectSet.of([0], n) for c in classes))
    )
    yield "overlap", CoveringSystem(
        n, system.coverings, DecisionPartition(classes + (ObjectSet.of([0], n),))
    )
    x = ObjectSet.of([n - 1], n)
    yield "uncovered object", CoveringSystem(
        n,
        (Covering(cov0.name, tuple(b - x for b in cov0.blocks if b - x)),) + system.coverings[1:],
        system.decision,
    )
    yield "no coverings", CoveringSystem(n, (), system.decision)


@settings(max_examples=40, deadline=None)
@given(systems())
def test_validate_detects_each_single_mutation(system):
    assert validate(system) == []
    for kind, broken in _mutations(system):
        kinds = {p.kind for p in validate(broken)}
        assert kind in kinds, (kind, kinds)
