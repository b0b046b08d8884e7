"""Witness blocks and the related family r(x) of a covering decision system.

A witness block is a block lying inside a single decision class.  ``r(x)`` is
the set of coverings owning a witness block that contains ``x``; it is
non-empty exactly on the positive region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from covred.core import CoveringSystem, ObjectSet, iter_bits


@dataclass(frozen=True)
class WitnessBlocks:
    """``by_covering[c]`` maps block index -> index of the decision class containing it."""

    by_covering: tuple[dict[int, int], ...]

    def of_class(self, covering: int, cls: int) -> list[int]:
        return sorted(b for b, j in self.by_covering[covering].items() if j == cls)

    def pairs(self) -> list[tuple[int, int, int]]:
        """(covering, block, class) triples in ascending order."""
        return [
            (c, b, j)
            for c, blocks in enumerate(self.by_covering)
            for b, j in sorted(blocks.items())
        ]

    def __len__(self) -> int:
        return sum(len(d) for d in self.by_covering)


def containing_class(mask: int, owner: list[int], classes: tuple[ObjectSet, ...]) -> int | None:
    """Index of the decision class containing the block ``mask``, if any."""
    if not mask:
        return None
    j = owner[(mask & -mask).bit_length() - 1]
    if j < 0:
        return None
    return j if mask & ~classes[j].bits == 0 else None


def witness_blocks(system: CoveringSystem) -> WitnessBlocks:
    owner = system.decision.class_index()
    classes = system.decision.classes
    out = []
    for cov in system.coverings:
        found = {}
        for b, block in enumerate(cov.blocks):
            j = containing_class(block.bits, owner, classes)
            if j is not None:
                found[b] = j
        out.append(found)
    return WitnessBlocks(tuple(out))


@dataclass(frozen=True)
class RelatedFamily:
    """``masks[x]`` is r(x) as a bitmask over covering indices; 0 outside the positive region."""

    masks: tuple[int, ...]
    n_coverings: int

    def r(self, obj: int) -> frozenset[int]:
        return frozenset(iter_bits(self.masks[obj]))

    def __contains__(self, obj: int) -> bool:
        return 0 <= obj < len(self.masks) and self.masks[obj] != 0

    def items(self) -> Iterator[tuple[int, frozenset[int]]]:
        """(object, r(object)) for objects of the positive region, ascending."""
        for x, m in enumerate(self.masks):
            if m:
                yield x, frozenset(iter_bits(m))

    @property
    def positive(self) -> ObjectSet:
        bits = 0
        for x, m in enumerate(self.masks):
            if m:
                bits |= 1 << x
        return ObjectSet(bits, len(self.masks))

    def distinct(self) -> set[int]:
        """The distinct non-empty r-values, as covering bitmasks."""
        return {m for m in self.masks if m}

    def __len__(self) -> int:
        return sum(1 for m in self.masks if m)


def family_from_witnesses(system: CoveringSystem, witnesses: WitnessBlocks) -> RelatedFamily:
    masks = [0] * system.universe_size
    for c, cov in enumerate(system.coverings):
        bit = 1 << c
        blocks = cov.blocks
        covered = 0
        for b in witnesses.by_covering[c]:
            covered |= blocks[b].bits
        for x in iter_bits(covered):
            masks[x] |= bit
    return RelatedFamily(tuple(masks), len(system.coverings))


def related_family(system: CoveringSystem) -> RelatedFamily:
    return family_from_witnesses(system, witness_blocks(system))
