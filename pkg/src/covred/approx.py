"""Minimal descriptions, third-type lower/upper approximations and regions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from covred.core import Covering, CoveringSystem, ObjectSet, iter_bits, union_covering


@dataclass(frozen=True)
class MinimalDescriptionTable:
    """``entries[x]`` lists (ascending) the indices of the minimal blocks containing ``x``."""

    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, obj: int) -> tuple[int, ...]:
        return self.entries[obj]

    def __len__(self) -> int:
        return len(self.entries)


def _dominated_members(masks: Sequence[int]) -> list[int]:
    # dominated[i]: objects for which block i is not minimal, i.e. the union of
    # every block strictly inside block i
    dominated = [0] * len(masks)
    for i, big in enumerate(masks):
        acc = 0
        for j, small in enumerate(masks):
            if j != i and small & ~big == 0 and small != big:
                acc |= small
        dominated[i] = acc
    return dominated


def minimal_descriptions(covering: Covering) -> MinimalDescriptionTable:
    if not covering.blocks:
        return MinimalDescriptionTable(())
    n = covering.blocks[0].universe_size
    masks = covering.masks
    dominated = _dominated_members(masks)
    rows: list[list[int]] = [[] for _ in range(n)]
    for i, mask in enumerate(masks):
        for x in iter_bits(mask & ~dominated[i]):
            rows[x].append(i)
    return MinimalDescriptionTable(tuple(tuple(r) for r in rows))


def lower_approx(covering: Covering, target: ObjectSet) -> ObjectSet:
    out = 0
    t = target.bits
    for block in covering.blocks:
        if block.universe_size != target.universe_size:
            raise ValueError("covering and target differ in universe size")
        if block.bits & ~t == 0:
            out |= block.bits
    return ObjectSet(out, target.universe_size)


def upper_approx(
    covering: Covering, md: MinimalDescriptionTable, target: ObjectSet
) -> ObjectSet:
    masks = covering.masks
    seen: set[int] = set()
    out = 0
    for x in target:
        for i in md[x]:
            if i not in seen:
                seen.add(i)
                out |= masks[i]
    return ObjectSet(out, target.universe_size)


def lower_approx_via_md(
    covering: Covering, md: MinimalDescriptionTable, target: ObjectSet
) -> ObjectSet:
    """Lower approximation restricted to minimal-description blocks.

    Equal to :func:`lower_approx`; kept as an independent cross-check.
    """
    masks = covering.masks
    used = {i for row in md.entries for i in row}
    out = 0
    for i in used:
        if masks[i] & ~target.bits == 0:
            out |= masks[i]
    return ObjectSet(out, target.universe_size)


@dataclass(frozen=True)
class RegionReport:
    positive: ObjectSet
    boundary: tuple[ObjectSet, ...]
    negative: tuple[ObjectSet, ...]
    per_class: tuple[tuple[ObjectSet, ObjectSet], ...]


def regions(system: CoveringSystem, selection: Iterable[int] | None = None) -> RegionReport:
    """Per-class (lower, upper) pairs and the positive region over the selected coverings.

    ``selection=None`` means every covering.
    """
    if selection is None:
        selection = range(len(system.coverings))
    cov = union_covering(system, selection)
    md = minimal_descriptions(cov)
    universe = system.universe
    pos = ObjectSet.empty(system.universe_size)
    pairs, bnd, neg = [], [], []
    for cls in system.decision.classes:
        low = lower_approx(cov, cls)
        up = upper_approx(cov, md, cls)
        pairs.append((low, up))
        bnd.append(up - low)
        neg.append(universe - up)
        pos = pos | low
    return RegionReport(pos, tuple(bnd), tuple(neg), tuple(pairs))


class Consistency(enum.Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


def classify_consistency(system: CoveringSystem) -> Consistency:
    full = (1 << system.universe_size) - 1
    if regions(system).positive.bits == full:
        return Consistency.CONSISTENT
    return Consistency.INCONSISTENT


def union_reducible_blocks(covering: Covering) -> frozenset[int]:
    """Indices of blocks that are minimal for none of their members."""
    dominated = _dominated_members(covering.masks)
    return frozenset(i for i, m in enumerate(covering.masks) if m & ~dominated[i] == 0)
