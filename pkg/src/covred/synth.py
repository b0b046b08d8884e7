"""Random covering systems and update events for tests and benchmarks."""

from __future__ import annotations

import random

from covred.core import CoveringSystem, build_system
from covred.dynamic import AddSpec, DeleteSpec, IncrementalState


def _class_assignment(rng: random.Random, n: int, k: int) -> list[list[int]]:
    k = max(1, min(k, n))
    owner = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(owner)
    classes: list[list[int]] = [[] for _ in range(k)]
    for x, j in enumerate(owner):
        classes[j].append(x)
    return classes


def random_system(
    rng: random.Random,
    n: int,
    m: int,
    k: int = 2,
    max_blocks: int = 8,
    overlap: float = 0.3,
) -> CoveringSystem:
    """Unconstrained small system: each covering scatters objects over a few blocks."""
    classes = _class_assignment(rng, n, k)
    coverings = []
    for c in range(m):
        nb = rng.randint(1, min(max_blocks, n))
        blocks: list[set[int]] = [set() for _ in range(nb)]
        for x in range(n):
            blocks[rng.randrange(nb)].add(x)
            if rng.random() < overlap:
                blocks[rng.randrange(nb)].add(x)
        coverings.append((f"C{c + 1}", [sorted(b) for b in blocks if b]))
    return build_system(n, coverings, classes)


def random_consistent_system(
    rng: random.Random,
    n: int,
    m: int,
    k: int = 3,
    max_fragment: int = 4,
    straddle: float = 0.3,
    overlap: float = 0.1,
    max_blocks: int | None = None,
    max_tries: int = 1000,
) -> CoveringSystem:
    """Consistent system built from decision-class fragments.

    Each covering cuts every class into fragments (witness blocks), then fuses
    some fragment pairs across classes into straddling blocks and adds a few
    overlapping blocks.  Objects left with no witness anywhere get a singleton
    block in a random covering.  With ``max_blocks`` draws are repeated until
    no covering exceeds it, giving up after ``max_tries`` draws.
    """
    for _ in range(max_tries):
        coverings, classes = _fragment_coverings(rng, n, m, k, max_fragment, straddle, overlap)
        if max_blocks is None or all(len(b) <= max_blocks for b in coverings):
            break
    else:
        raise ValueError(f"no draw within {max_blocks} blocks per covering after {max_tries} tries")
    return build_system(n, [(f"C{c + 1}", b) for c, b in enumerate(coverings)], classes)


def _fragment_coverings(rng, n, m, k, max_fragment, straddle, overlap):
    classes = _class_assignment(rng, n, k)
    owner = [0] * n
    for j, cl in enumerate(classes):
        for x in cl:
            owner[x] = j
    coverings: list[list[list[int]]] = []
    for _ in range(m):
        frags: list[list[int]] = []
        for cl in classes:
            members = cl[:]
            rng.shuffle(members)
            i = 0
            while i < len(members):
                size = rng.randint(1, max_fragment)
                frags.append(members[i : i + size])
                i += size
        rng.shuffle(frags)
        blocks: list[list[int]] = []
        while frags:
            f = frags.pop()
            if frags and rng.random() < straddle and owner[frags[-1][0]] != owner[f[0]]:
                blocks.append(f + frags.pop())
                continue
            blocks.append(f)
        for _ in range(int(overlap * len(blocks))):
            blocks.append(sorted({rng.randrange(n), rng.randrange(n)}))
        coverings.append(blocks)
    witnessed = [False] * n
    for blocks in coverings:
        for b in blocks:
            if len({owner[x] for x in b}) == 1:
                for x in b:
                    witnessed[x] = True
    for x in range(n):
        if not witnessed[x]:
            coverings[rng.randrange(m)].append([x])
    return coverings, classes


def random_add(
    rng: random.Random,
    system: CoveringSystem,
    max_picks: int = 2,
    state: IncrementalState | None = None,
) -> AddSpec:
    """A random valid add event.

    With ``state`` given, one random covering is forced to hand the new object
    a witness block of its class, so the new object lands in the positive region.
    """
    k = len(system.decision.classes)
    cls = rng.randrange(k)
    picks = []
    for cov in system.coverings:
        count = rng.randint(1, min(max_picks, len(cov.blocks)))
        picks.append(tuple(sorted(rng.sample(range(len(cov.blocks)), count))))
    if state is not None:
        c = rng.randrange(len(system.coverings))
        same = state.witnesses.of_class(c, cls)
        if same:
            picks[c] = (rng.choice(same),)
    return AddSpec(tuple(picks), cls)


def random_delete(rng: random.Random, system: CoveringSystem) -> DeleteSpec:
    return DeleteSpec(rng.randrange(system.universe_size))
