"""Related function, its reduced disjunctive form, and reduct enumeration.

The related function is a monotone CNF over covering indices with one clause
per distinct r(x).  Its prime implicants (the minimal hitting sets of the
clauses) are the attribute reducts.  Clauses and implicants are handled
internally as int bitmasks over covering indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from covred.approx import lower_approx
from covred.core import CoveringSystem, iter_bits, mask_of, union_covering
from covred.errors import (
    EmptyFamilyError,
    ImplicantCapExceeded,
    InconsistentSystemError,
    OracleGuardExceeded,
)
from covred.related import RelatedFamily, related_family

DEFAULT_IMPLICANT_CAP = 100_000
DEFAULT_ORACLE_GUARD = 16

REDUCTS = "reducts"
POS_PRESERVING = "pos-preserving implicants"


def _canonical(masks: Iterable[int]) -> tuple[frozenset[int], ...]:
    sets = [tuple(iter_bits(m)) for m in masks]
    sets.sort(key=lambda s: (len(s), s))
    return tuple(frozenset(s) for s in sets)


def absorb(masks: Iterable[int]) -> list[int]:
    """Drop every mask that is a superset of another (keeps the minimal antichain)."""
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class MonotoneCNF:
    clauses: tuple[frozenset[int], ...]

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> MonotoneCNF:
        masks = list(masks)
        if any(m == 0 for m in masks):
            raise ValueError("empty clause")
        return cls(_canonical(absorb(masks)))

    @property
    def masks(self) -> list[int]:
        return [mask_of(c) for c in self.clauses]

    def __len__(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class ReductSet:
    implicants: tuple[frozenset[int], ...]
    kind: str = REDUCTS

    @classmethod
    def from_masks(cls, masks: Iterable[int], kind: str = REDUCTS) -> ReductSet:
        return cls(_canonical(masks), kind)

    @property
    def masks(self) -> list[int]:
        return [mask_of(s) for s in self.implicants]

    def as_sets(self) -> set[frozenset[int]]:
        return set(self.implicants)

    def named(self, names: Sequence[str]) -> list[list[str]]:
        return [[names[i] for i in sorted(s)] for s in self.implicants]

    def __len__(self) -> int:
        return len(self.implicants)

    def __iter__(self):
        return iter(self.implicants)


def related_function(family: RelatedFamily) -> MonotoneCNF:
    clauses = family.distinct()
    if not clauses:
        raise EmptyFamilyError("empty related family")
    return MonotoneCNF.from_masks(clauses)


def _bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def prime_implicants(
    clauses: Sequence[int], cap: int = DEFAULT_IMPLICANT_CAP, presorted: bool = False
) -> list[int]:
    """Minimal hitting sets of a family of clause masks.

    Multiplies the clauses out one at a time, applying absorption after every
    product so the running set of partial implicants stays an antichain.
    """
    order = list(clauses) if presorted else sorted(set(clauses), key=lambda m: (m.bit_count(), m))
    partial = [0]
    for clause in order:
        if clause == 0:
            raise ValueError("empty clause")
        hit = [p for p in partial if p & clause]
        missed = [p for p in partial if not p & clause]
        if not missed:
            continue
        grown = {p | b for p in missed for b in _bits_of(clause)}
        merged = absorb([*hit, *grown])
        if len(merged) > cap:
            raise ImplicantCapExceeded(
                f"implicant cap exceeded: {len(merged)} partial implicants > cap {cap}"
            )
        partial = merged
    return partial


def reduced_disjunctive_form(
    cnf: MonotoneCNF, cap: int = DEFAULT_IMPLICANT_CAP, kind: str = REDUCTS
) -> ReductSet:
    return ReductSet.from_masks(prime_implicants(cnf.masks, cap), kind)


def is_consistent_family(family: RelatedFamily) -> bool:
    return all(family.masks)


def reducts_from_family(
    family: RelatedFamily, cap: int = DEFAULT_IMPLICANT_CAP, *, strict: bool = True
) -> ReductSet:
    """Implicants of the related function of ``family``.

    For a family with gaps (inconsistent system) ``strict`` raises; otherwise
    the result is labelled as a POS-preserving implicant set.
    """
    consistent = is_consistent_family(family)
    if not consistent and strict:
        raise InconsistentSystemError("system inconsistent; positive region != U")
    kind = REDUCTS if consistent else POS_PRESERVING
    return reduced_disjunctive_form(related_function(family), cap, kind)


def reducts(system: CoveringSystem, cap: int = DEFAULT_IMPLICANT_CAP) -> ReductSet:
    """All attribute reducts of a consistent system via the related family."""
    return reducts_from_family(related_family(system), cap, strict=True)


def pos_preserving_implicants(
    system: CoveringSystem, cap: int = DEFAULT_IMPLICANT_CAP
) -> ReductSet:
    return reducts_from_family(related_family(system), cap, strict=False)


def positive_region_bits(system: CoveringSystem, selection: Iterable[int]) -> int:
    """POS of the decision over the union of the selected coverings, computed from blocks."""
    sel = list(selection)
    if not sel:
        return 0
    cov = union_covering(system, sel)
    out = 0
    for cls in system.decision.classes:
        out |= lower_approx(cov, cls).bits
    return out


def oracle_reducts(system: CoveringSystem, guard: int = DEFAULT_ORACLE_GUARD) -> ReductSet:
    """Minimal sub-families preserving the positive region, by exhaustive subset scan."""
    m = len(system.coverings)
    if m > guard:
        raise OracleGuardExceeded(f"oracle guard exceeded: {m} coverings > guard {guard}")
    target = positive_region_bits(system, range(m))
    full = (1 << system.universe_size) - 1
    kind = REDUCTS if target == full else POS_PRESERVING
    found: list[int] = []
    for size in range(0, m + 1):
        for combo in combinations(range(m), size):
            mask = mask_of(combo)
            if any(f & mask == f for f in found):
                continue
            if positive_region_bits(system, combo) == target:
                found.append(mask)
    return ReductSet.from_masks(found, kind)
