"""Incremental maintenance of the related family under single-object updates.

Adding an object can only break witness blocks (a witness block that absorbs
an object of another class stops being one), so an old object can only lose
coverings it already had: coverings outside r(x) are never looked at again.
Deleting an object can only create witness blocks (a block that sheds the
object may now fit a class), so r(x) only grows: coverings already in r(x)
are kept without a check and only the others are examined.

Reducts are recomputed from the updated clause set after every event.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from covred.core import Covering, CoveringSystem, DecisionPartition, ObjectSet, iter_bits
from covred.errors import UpdateError
from covred.reduct import DEFAULT_IMPLICANT_CAP, ReductSet, reducts_from_family
from covred.related import (
    RelatedFamily,
    WitnessBlocks,
    family_from_witnesses,
    witness_blocks,
)


@dataclass(frozen=True)
class AddSpec:
    """One new object: ``absorbing[c]`` lists the blocks of covering ``c`` that gain it."""

    absorbing: tuple[tuple[int, ...], ...]
    decision_class: int
    label: str | None = None


@dataclass(frozen=True)
class DeleteSpec:
    obj: int


UpdateSpec = Union[AddSpec, DeleteSpec]


@dataclass(frozen=True)
class SystemDelta:
    """An updated system plus the bookkeeping needed to patch derived state.

    ``touched[c]`` are the old indices of the blocks of covering ``c`` that
    gained or lost the object.  For deletions ``block_map[c]`` sends old block
    indices to new ones (``None`` for a dropped block; the whole entry is
    ``None`` when covering ``c`` kept its indices) and ``class_map`` does the
    same for decision classes.
    """

    system: CoveringSystem
    kind: str
    obj: int
    touched: tuple[tuple[int, ...], ...]
    block_map: tuple[tuple[int | None, ...] | None, ...] | None = None
    class_map: tuple[int | None, ...] | None = None
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class UpdateStats:
    """Examination counters for one event.

    An examination is one decision of whether covering C belongs to r(x) for
    an object x that existed before the event.
    """

    kind: str
    inside: int = 0
    outside: int = 0
    new_object: int = 0

    @property
    def violations(self) -> int:
        # adds must never look outside r(x); deletes never inside
        return self.outside if self.kind == "add" else self.inside


@dataclass(frozen=True)
class IncrementalState:
    system: CoveringSystem
    family: RelatedFamily
    witnesses: WitnessBlocks
    reducts: ReductSet | None
    stats: UpdateStats | None = field(default=None, compare=False)

    @property
    def consistent(self) -> bool:
        return all(self.family.masks)


def state_reducts(family: RelatedFamily, cap: int) -> ReductSet | None:
    if not family.distinct():
        return None
    return reducts_from_family(family, cap, strict=False)


def initial_state(system: CoveringSystem, cap: int = DEFAULT_IMPLICANT_CAP) -> IncrementalState:
    wit = witness_blocks(system)
    fam = family_from_witnesses(system, wit)
    return IncrementalState(system, fam, wit, state_reducts(fam, cap))


def rebuild(state: IncrementalState, cap: int = DEFAULT_IMPLICANT_CAP) -> IncrementalState:
    return initial_state(state.system, cap)


def _fresh_label(labels: Sequence[str], n: int) -> str:
    taken = set(labels)
    k = n + 1
    while f"x{k}" in taken:
        k += 1
    return f"x{k}"


def check_add(system: CoveringSystem, spec: AddSpec) -> None:
    m = len(system.coverings)
    if len(spec.absorbing) != m:
        raise UpdateError(f"add event lists {len(spec.absorbing)} coverings, system has {m}")
    for c, picks in enumerate(spec.absorbing):
        if not picks:
            raise UpdateError(f"new object uncovered in covering {c}")
        size = len(system.coverings[c].blocks)
        for b in picks:
            if not 0 <= b < size:
                raise UpdateError(f"covering {c}: block index {b} out of range (0..{size - 1})")
    if not 0 <= spec.decision_class < len(system.decision.classes):
        raise UpdateError(f"decision class index {spec.decision_class} out of range")
    if spec.label is not None and spec.label in system.labels():
        raise UpdateError(f"object label {spec.label!r} already in use")


def add_object(system: CoveringSystem, spec: AddSpec) -> SystemDelta:
    """The system over U plus one new object, as described by ``spec``."""
    check_add(system, spec)
    n = system.universe_size
    size = n + 1
    new_bit = 1 << n
    coverings = []
    touched = []
    for cov, picks in zip(system.coverings, spec.absorbing):
        picks = tuple(sorted(set(picks)))
        pickset = set(picks)
        blocks = tuple(
            ObjectSet(b.bits | new_bit if i in pickset else b.bits, size)
            for i, b in enumerate(cov.blocks)
        )
        coverings.append(Covering(cov.name, blocks))
        touched.append(picks)
    classes = tuple(
        ObjectSet(cl.bits | new_bit if j == spec.decision_class else cl.bits, size)
        for j, cl in enumerate(system.decision.classes)
    )
    labels = system.labels()
    label = spec.label if spec.label is not None else _fresh_label(labels, n)
    new = CoveringSystem(size, tuple(coverings), DecisionPartition(classes), labels + (label,))
    return SystemDelta(new, "add", n, tuple(touched))


def _shed(mask: int, y: int) -> int:
    low = mask & ((1 << y) - 1)
    return low | ((mask >> (y + 1)) << y)


def delete_object(system: CoveringSystem, obj: int) -> SystemDelta:
    """The system with object ``obj`` removed and higher ids shifted down by one."""
    n = system.universe_size
    if not 0 <= obj < n:
        raise UpdateError(f"object id {obj} does not exist")
    size = n - 1
    ybit = 1 << obj
    notes = []
    coverings = []
    touched_all = []
    maps: list[tuple[int | None, ...] | None] = []
    for ci, cov in enumerate(system.coverings):
        touched = []
        bmap: list[int | None] = []
        seen: dict[int, int] = {}
        blocks = []
        identity = True
        for bi, block in enumerate(cov.blocks):
            bits = block.bits
            if bits & ybit:
                touched.append(bi)
            nb = _shed(bits, obj)
            if not nb:
                notes.append(f"covering {ci} ({cov.name}): block {bi} emptied by deletion, dropped")
                bmap.append(None)
                identity = False
                continue
            if nb in seen:
                notes.append(
                    f"covering {ci} ({cov.name}): block {bi} merged into block {seen[nb]} after deletion"
                )
                bmap.append(seen[nb])
                identity = False
                continue
            seen[nb] = len(blocks)
            bmap.append(len(blocks))
            blocks.append(ObjectSet(nb, size))
        if not blocks:
            raise UpdateError(f"covering {ci} became empty")
        coverings.append(Covering(cov.name, tuple(blocks)))
        touched_all.append(tuple(touched))
        maps.append(None if identity else tuple(bmap))
    classes = []
    cmap: list[int | None] = []
    for j, cl in enumerate(system.decision.classes):
        nb = _shed(cl.bits, obj)
        if not nb:
            notes.append(f"decision class {j} emptied by deletion, dropped")
            cmap.append(None)
            continue
        cmap.append(len(classes))
        classes.append(ObjectSet(nb, size))
    labels = system.labels()
    new = CoveringSystem(
        size,
        tuple(coverings),
        DecisionPartition(tuple(classes)),
        labels[:obj] + labels[obj + 1 :],
        tuple(notes),
    )
    class_map = None if len(classes) == len(cmap) else tuple(cmap)
    return SystemDelta(new, "delete", obj, tuple(touched_all), tuple(maps), class_map, tuple(notes))


def _class_of(mask: int, classes: tuple[ObjectSet, ...]) -> int | None:
    for j, cl in enumerate(classes):
        if mask & ~cl.bits == 0:
            return j
    return None


def update_family_add(
    state: IncrementalState, delta: SystemDelta, spec: AddSpec
) -> tuple[RelatedFamily, WitnessBlocks, UpdateStats]:
    """Patch the family and witness cache after ``add_object``."""
    old_blocks = state.system.coverings
    new_blocks = delta.system.coverings
    target = spec.decision_class
    r_new = 0
    inside = outside = 0
    witnesses = []
    masks = list(state.family.masks)
    masks.append(0)
    for c, picks in enumerate(delta.touched):
        bit = 1 << c
        wit = state.witnesses.by_covering[c]
        broken = [b for b in picks if b in wit and wit[b] != target]
        if any(wit.get(b) == target for b in picks):
            r_new |= bit
        if not broken:
            witnesses.append(wit)
            continue
        wit = dict(wit)
        affected = 0
        for b in broken:
            del wit[b]
            affected |= old_blocks[c].blocks[b].bits
        witnesses.append(wit)
        blocks = new_blocks[c].blocks
        still = 0
        for b in wit:
            m = blocks[b].bits
            if m & affected:
                still |= m
        for x in iter_bits(affected):
            if masks[x] & bit:
                inside += 1
            else:
                outside += 1
            if not (still >> x) & 1:
                masks[x] &= ~bit
    masks[delta.obj] = r_new
    stats = UpdateStats("add", inside, outside, len(delta.touched))
    return RelatedFamily(tuple(masks), len(new_blocks)), WitnessBlocks(tuple(witnesses)), stats


def update_family_delete(
    state: IncrementalState, delta: SystemDelta
) -> tuple[RelatedFamily, WitnessBlocks, UpdateStats]:
    """Patch the family and witness cache after ``delete_object``."""
    new_sys = delta.system
    classes = new_sys.decision.classes
    cmap = delta.class_map
    outside = 0
    masks = list(state.family.masks)
    del masks[delta.obj]
    witnesses = []
    for c, touched in enumerate(delta.touched):
        bit = 1 << c
        old = state.witnesses.by_covering[c]
        bmap = delta.block_map[c] if delta.block_map else None
        if bmap is None and cmap is None:
            wit = dict(old)
        else:
            wit = {}
            for b, j in old.items():
                nb = b if bmap is None else bmap[b]
                if nb is None:
                    continue
                wit[nb] = j if cmap is None else cmap[j]
        blocks = new_sys.coverings[c].blocks
        for b in touched:
            if b in old:
                continue
            nb = b if bmap is None else bmap[b]
            if nb is None or nb in wit:
                continue
            j = _class_of(blocks[nb].bits, classes)
            if j is None:
                continue
            wit[nb] = j
            for x in iter_bits(blocks[nb].bits):
                if not masks[x] & bit:
                    outside += 1
                    masks[x] |= bit
        witnesses.append(wit)
    stats = UpdateStats("delete", 0, outside, 0)
    return RelatedFamily(tuple(masks), len(new_sys.coverings)), WitnessBlocks(tuple(witnesses)), stats


def apply_add(
    state: IncrementalState, spec: AddSpec, cap: int = DEFAULT_IMPLICANT_CAP
) -> IncrementalState:
    delta = add_object(state.system, spec)
    family, wit, stats = update_family_add(state, delta, spec)
    return IncrementalState(delta.system, family, wit, state_reducts(family, cap), stats)


def apply_delete(
    state: IncrementalState, spec: DeleteSpec, cap: int = DEFAULT_IMPLICANT_CAP
) -> IncrementalState:
    delta = delete_object(state.system, spec.obj)
    family, wit, stats = update_family_delete(state, delta)
    return IncrementalState(delta.system, family, wit, state_reducts(family, cap), stats)


def apply_event(
    state: IncrementalState, spec: UpdateSpec, cap: int = DEFAULT_IMPLICANT_CAP
) -> IncrementalState:
    if isinstance(spec, AddSpec):
        return apply_add(state, spec, cap)
    return apply_delete(state, spec, cap)
