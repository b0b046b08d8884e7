from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covred.core import build_system
from covred.errors import (
    EmptyFamilyError,
    ImplicantCapExceeded,
    InconsistentSystemError,
    OracleGuardExceeded,
)
from covred.reduct import (
    POS_PRESERVING,
    REDUCTS,
    MonotoneCNF,
    absorb,
    oracle_reducts,
    pos_preserving_implicants,
    positive_region_bits,
    prime_implicants,
    reducts,
    reducts_from_family,
)
from covred.related import RelatedFamily, related_family

from conftest import clause_families, systems

GOLDEN_REDUCTS = [["C1", "C2"], ["C1", "C4"], ["C2", "C3"], ["C2", "C5"], ["C3", "C4"], ["C4", "C5"]]


def brute_hitting_sets(clauses: list[int]) -> set[int]:
    width = max(clauses).bit_length()
    hits = [s for s in range(1 << width) if all(s & c for c in clauses)]
    return {s for s in hits if not any(t != s and t & s == t for t in hits)}


def test_cnf_absorption():
    cnf = MonotoneCNF.from_masks([0b011, 0b111, 0b011, 0b100])
    assert cnf.clauses == (frozenset({2}), frozenset({0, 1}))
    with pytest.raises(ValueError):
        MonotoneCNF.from_masks([0b1, 0])


def test_absorb_keeps_antichain():
    assert absorb([0b1, 0b11, 0b110, 0b100]) == [0b1, 0b100]


def test_prime_implicants_small():
    # (a or b) and (a or c) = a or (b and c)
    assert sorted(prime_implicants([0b011, 0b101])) == [0b001, 0b110]
    assert prime_implicants([0b1]) == [0b1]


def test_golden_reducts(base):
    found = reducts(base)
    assert found.kind == REDUCTS
    assert found.named(base.covering_names()) == GOLDEN_REDUCTS


def test_golden_matches_oracle(base):
    assert oracle_reducts(base) == reducts(base)


def test_inconsistent_raises(single):
    with pytest.raises(InconsistentSystemError, match="positive region"):
        reducts(single)
    loose = pos_preserving_implicants(single)
    assert loose.kind == POS_PRESERVING
    assert loose.named(single.covering_names()) == [["C"]]


def test_empty_family_raises():
    with pytest.raises(EmptyFamilyError):
        pos_preserving_implicants(build_system(2, [("C", [[0, 1]])], [[0], [1]]))


def test_cap_exceeded():
    # four disjoint pairs: 16 prime implicants
    clauses = [0b11 << (2 * i) for i in range(4)]
    assert len(prime_implicants(clauses)) == 16
    with pytest.raises(ImplicantCapExceeded):
        prime_implicants(clauses, cap=5)


def test_oracle_guard(base):
    with pytest.raises(OracleGuardExceeded):
        oracle_reducts(base, guard=4)


def test_family_of_one_covering_everywhere():
    fam = RelatedFamily((0b1, 0b1, 0b1), 1)
    assert reducts_from_family(fam).masks == [0b1]


@settings(max_examples=300, deadline=None)
@given(clause_families())
def test_prime_implicants_match_brute_force(clauses):
    assert set(prime_implicants(clauses)) == brute_hitting_sets(clauses)


@settings(max_examples=200, deadline=None)
@given(clause_families(), st.randoms(use_true_random=False))
def test_clause_order_and_absorbed_clauses_irrelevant(clauses, rnd):
    base = set(prime_implicants(clauses))
    shuffled = clauses[:]
    rnd.shuffle(shuffled)
    padded = shuffled + [c | (1 << 7) for c in clauses]
    assert set(prime_implicants(padded)) == base


@settings(max_examples=150, deadline=None)
@given(systems())
def test_reducts_match_oracle(system):
    fam = related_family(system)
    if not all(fam.masks):
        return
    assert reducts(system) == oracle_reducts(system)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_each_reduct_preserves_pos_and_is_minimal(system):
    fam = related_family(system)
    if not fam.distinct():
        return
    found = pos_preserving_implicants(system)
    target = positive_region_bits(system, range(len(system.coverings)))
    for red in found:
        assert positive_region_bits(system, red) == target
        for sub in combinations(sorted(red), len(red) - 1):
            if sub:
                assert positive_region_bits(system, sub) != target


@settings(max_examples=100, deadline=None)
@given(systems())
def test_canonical_order(system):
    if not all(related_family(system).masks):
        return
    sets = [tuple(sorted(s)) for s in reducts(system)]
    assert sets == sorted(sets, key=lambda s: (len(s), s))
