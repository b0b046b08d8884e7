from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from covred import io
from covred.core import build_system

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name: str):
    return io.parse_system((DATA / name).read_text())


@pytest.fixture
def base():
    return load("golden_base.json")


@pytest.fixture
def added():
    return load("golden_added.json")


@pytest.fixture
def single():
    return load("single_inconsistent.json")


@pytest.fixture
def deleted():
    return load("golden_deleted.json")


def ids(system, *labels):
    lab = system.labels()
    return [lab.index(x) for x in labels]


def named(system, cover_ids):
    names = system.covering_names()
    return {names[i] for i in cover_ids}


@st.composite
def systems(draw, max_n=8, max_m=4, max_blocks=6, max_classes=3):
    """Small valid covering systems with arbitrary overlap."""
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, min(max_classes, n)))
    owner = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    classes = [[x for x in range(n) if owner[x] == j] for j in range(k)]
    classes = [c for c in classes if c]
    m = draw(st.integers(1, max_m))
    coverings = []
    for c in range(m):
        blocks = draw(
            st.lists(
                st.sets(st.integers(0, n - 1), min_size=1, max_size=n).map(sorted),
                min_size=1,
                max_size=max_blocks,
            )
        )
        covered = {x for b in blocks for x in b}
        for x in range(n):
            if x not in covered:
                i = draw(st.integers(0, len(blocks)))
                if i == len(blocks):
                    blocks.append([x])
                else:
                    blocks[i] = sorted(set(blocks[i]) | {x})
        coverings.append((f"C{c + 1}", blocks))
    return build_system(n, coverings, classes)


@st.composite
def clause_families(draw, max_vars=6, max_clauses=7):
    n = draw(st.integers(1, max_vars))
    return draw(
        st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=max_clauses)
    )
