"""Domain types: object sets over a fixed universe, coverings, decision partitions.

Objects are dense integer ids ``0..n-1``.  External names live only in
``CoveringSystem.object_labels`` and in the document formats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from covred.errors import SelectionError, ValidationError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    if mask.bit_count() > 64:
        # dense masks: one pass over the binary string beats repeated big-int ops
        digits = bin(mask)[:1:-1]
        yield from (i for i, d in enumerate(digits) if d == "1")
        return
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


@dataclass(frozen=True, slots=True)
class ObjectSet:
    """A set of object ids backed by a Python int used as a bitset."""

    bits: int
    universe_size: int

    @classmethod
    def of(cls, ids: Iterable[int], universe_size: int) -> ObjectSet:
        ids = list(ids)
        for i in ids:
            if not 0 <= i < universe_size:
                raise ValueError(f"object id {i} outside universe of size {universe_size}")
        return cls(mask_of(ids), universe_size)

    @classmethod
    def empty(cls, universe_size: int) -> ObjectSet:
        return cls(0, universe_size)

    @classmethod
    def full(cls, universe_size: int) -> ObjectSet:
        return cls((1 << universe_size) - 1, universe_size)

    def _check(self, other: ObjectSet) -> None:
        if not isinstance(other, ObjectSet):
            raise TypeError(f"expected ObjectSet, got {type(other).__name__}")
        if other.universe_size != self.universe_size:
            raise ValueError(
                f"universe size mismatch: {self.universe_size} vs {other.universe_size}"
            )

    def __or__(self, other: ObjectSet) -> ObjectSet:
        self._check(other)
        return ObjectSet(self.bits | other.bits, self.universe_size)

    def __and__(self, other: ObjectSet) -> ObjectSet:
        self._check(other)
        return ObjectSet(self.bits & other.bits, self.universe_size)

    def __sub__(self, other: ObjectSet) -> ObjectSet:
        self._check(other)
        return ObjectSet(self.bits & ~other.bits, self.universe_size)

    def __le__(self, other: ObjectSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: ObjectSet) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: ObjectSet) -> bool:
        return other <= self

    def __gt__(self, other: ObjectSet) -> bool:
        return other < self

    def issubset(self, other: ObjectSet) -> bool:
        return self <= other

    def complement(self) -> ObjectSet:
        return ObjectSet(((1 << self.universe_size) - 1) & ~self.bits, self.universe_size)

    def __contains__(self, obj: int) -> bool:
        return obj >= 0 and (self.bits >> obj) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"ObjectSet({sorted(self)}, n={self.universe_size})"


@dataclass(frozen=True)
class Covering:
    name: str
    blocks: tuple[ObjectSet, ...]

    @classmethod
    def build(
        cls, name: str, blocks: Iterable[Iterable[int] | ObjectSet], universe_size: int
    ) -> tuple[Covering, list[int]]:
        """Build a covering, dropping repeated blocks.

        Returns the covering and the input positions of the dropped duplicates.
        """
        kept: list[ObjectSet] = []
        seen: set[int] = set()
        dropped = []
        for pos, block in enumerate(blocks):
            if not isinstance(block, ObjectSet):
                block = ObjectSet.of(block, universe_size)
            if block.bits in seen:
                dropped.append(pos)
                continue
            seen.add(block.bits)
            kept.append(block)
        return cls(name, tuple(kept)), dropped

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(b.bits for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class DecisionPartition:
    classes: tuple[ObjectSet, ...]

    def class_index(self) -> list[int]:
        """Class index of every object (-1 for objects in no class)."""
        n = self.classes[0].universe_size if self.classes else 0
        owner = [-1] * n
        for j, cls in enumerate(self.classes):
            for x in cls:
                if x < n:
                    owner[x] = j
        return owner

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class CoveringSystem:
    """The triple (universe, family of coverings, decision partition)."""

    universe_size: int
    coverings: tuple[Covering, ...]
    decision: DecisionPartition
    object_labels: tuple[str, ...] | None = None
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        # unlabelled systems get x1..xn so equality does not depend on how labels arrived
        if self.object_labels is None:
            default = tuple(f"x{i + 1}" for i in range(self.universe_size))
            object.__setattr__(self, "object_labels", default)

    def label(self, obj: int) -> str:
        return self.object_labels[obj]

    def labels(self) -> tuple[str, ...]:
        return self.object_labels

    def covering_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.coverings)

    def objects(self, ids: Iterable[int]) -> ObjectSet:
        return ObjectSet.of(ids, self.universe_size)

    @property
    def universe(self) -> ObjectSet:
        return ObjectSet.full(self.universe_size)


def build_system(
    universe_size: int,
    coverings: Sequence[tuple[str, Iterable[Iterable[int]]]],
    decision: Iterable[Iterable[int]],
    object_labels: Sequence[str] | None = None,
    *,
    check: bool = True,
) -> CoveringSystem:
    """Assemble a system from id lists, deduplicating blocks within each covering.

    With ``check`` the result is validated and ``ValidationError`` raised on
    any violation.
    """
    built = []
    notes = []
    for ci, (name, blocks) in enumerate(coverings):
        cov, dropped = Covering.build(name, blocks, universe_size)
        for pos in dropped:
            notes.append(f"covering {ci} ({name}): duplicate block at position {pos} removed")
        built.append(cov)
    classes = tuple(ObjectSet.of(c, universe_size) for c in decision)
    system = CoveringSystem(
        universe_size,
        tuple(built),
        DecisionPartition(classes),
        tuple(object_labels) if object_labels is not None else None,
        tuple(notes),
    )
    if check:
        ensure_valid(system)
    return system


def system_from_labels(
    objects: Sequence[str],
    coverings: Sequence[tuple[str, Iterable[Iterable[str]]]],
    decision: Iterable[Iterable[str]],
    *,
    check: bool = True,
) -> CoveringSystem:
    index = {label: i for i, label in enumerate(objects)}
    if len(index) != len(objects):
        raise ValidationError("duplicate object labels")

    def ids(labels):
        try:
            return [index[lab] for lab in labels]
        except KeyError as exc:
            raise ValidationError(f"unknown object label {exc.args[0]!r}") from None

    return build_system(
        len(objects),
        [(name, [ids(b) for b in blocks]) for name, blocks in coverings],
        [ids(c) for c in decision],
        objects,
        check=check,
    )


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    covering: int | None = None
    block: int | None = None

    def __str__(self) -> str:
        return self.message


def validate(system: CoveringSystem) -> list[Violation]:
    """Return every broken structural invariant of ``system`` (empty when valid)."""
    out: list[Violation] = []
    n = system.universe_size
    full = (1 << n) - 1
    if not system.coverings:
        out.append(Violation("no coverings", "the family of coverings is empty"))
    if system.object_labels is not None and len(system.object_labels) != n:
        out.append(
            Violation(
                "label count",
                f"{len(system.object_labels)} labels for a universe of {n} objects",
            )
        )
    for ci, cov in enumerate(system.coverings):
        union = 0
        seen: dict[int, int] = {}
        for bi, block in enumerate(cov.blocks):
            if block.universe_size != n:
                out.append(
                    Violation(
                        "size mismatch",
                        f"covering {ci} ({cov.name}) block {bi}: universe size "
                        f"{block.universe_size} != {n}",
                        ci,
                        bi,
                    )
                )
                continue
            if block.bits >> n:
                out.append(
                    Violation(
                        "out of range",
                        f"covering {ci} ({cov.name}) block {bi}: member id >= {n}",
                        ci,
                        bi,
                    )
                )
            if not block.bits:
                out.append(
                    Violation("empty block", f"covering {ci} ({cov.name}) block {bi} is empty", ci, bi)
                )
            if block.bits in seen:
                out.append(
                    Violation(
                        "duplicate block",
                        f"covering {ci} ({cov.name}) block {bi} repeats block {seen[block.bits]}",
                        ci,
                        bi,
                    )
                )
            else:
                seen[block.bits] = bi
            union |= block.bits
        missing = full & ~union
        for x in iter_bits(missing):
            out.append(
                Violation(
                    "uncovered object",
                    f"covering {ci} ({cov.name}): object {system.label(x) if _labels_ok(system) else x} "
                    f"is in no block",
                    ci,
                )
            )
    covered = 0
    classes = system.decision.classes
    if not classes:
        out.append(Violation("no classes", "decision partition has no classes"))
    for j, cls in enumerate(classes):
        if cls.universe_size != n:
            out.append(
                Violation("size mismatch", f"decision class {j}: universe size {cls.universe_size} != {n}")
            )
            continue
        if cls.bits >> n:
            out.append(Violation("out of range", f"decision class {j}: member id >= {n}"))
        if not cls.bits:
            out.append(Violation("empty class", f"decision class {j} is empty"))
        if covered & cls.bits:
            out.append(
                Violation(
                    "overlap",
                    f"decision class {j} overlaps earlier classes on "
                    f"{sorted(iter_bits(covered & cls.bits))}",
                )
            )
        covered |= cls.bits
    for x in iter_bits(full & ~covered):
        out.append(Violation("unclassified object", f"object {x} belongs to no decision class"))
    return out


def _labels_ok(system: CoveringSystem) -> bool:
    return system.object_labels is None or len(system.object_labels) == system.universe_size


def ensure_valid(system: CoveringSystem) -> CoveringSystem:
    problems = validate(system)
    if problems:
        raise ValidationError(
            f"invalid covering system ({len(problems)} violations): "
            + "; ".join(p.message for p in problems[:5]),
            problems,
        )
    return system


def union_covering(system: CoveringSystem, selection: Iterable[int]) -> Covering:
    """The covering formed by all blocks of the selected coverings, deduplicated."""
    sel = sorted(set(selection))
    if not sel:
        raise SelectionError("empty covering selection")
    for i in sel:
        if not 0 <= i < len(system.coverings):
            raise SelectionError(f"covering index {i} out of range")
    name = "+".join(system.coverings[i].name for i in sel)
    blocks = [b for i in sel for b in system.coverings[i].blocks]
    cov, _ = Covering.build(name, blocks, system.universe_size)
    return cov
