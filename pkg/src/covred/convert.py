"""Turn a decision table into a covering system.

Nominal condition attributes give the partition into equal-value classes.
Numeric attributes give neighbourhood coverings: one block per row holding
every row within ``radius`` of it, duplicates removed.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Mapping, Sequence

from covred.core import CoveringSystem, build_system
from covred.errors import DocumentError

MISSING = {"", "?", "NA", "NaN", "nan", "null", "None"}


def _cell(row: Mapping, column: str, i: int):
    value = row.get(column)
    if value is None or (isinstance(value, str) and value.strip() in MISSING):
        raise DocumentError(f"row {i + 1}: missing value in column {column!r}")
    return value


def convert_table(
    rows: Sequence[Mapping[str, object]],
    decision: str,
    radius: Mapping[str, float] | None = None,
    columns: Sequence[str] | None = None,
    labels: Sequence[str] | None = None,
) -> CoveringSystem:
    """Covering system from table rows.

    ``radius`` names the numeric attributes and their neighbourhood radii;
    every other column except ``decision`` is nominal.
    """
    radius = dict(radius or {})
    if not rows:
        raise DocumentError("table has no rows")
    if columns is None:
        columns = list(rows[0].keys())
    if decision not in columns:
        raise DocumentError(f"decision column {decision!r} not in table")
    if decision in radius:
        raise DocumentError(f"decision column {decision!r} must be nominal, not numeric")
    for name in radius:
        if name not in columns:
            raise DocumentError(f"numeric column {name!r} not in table")
        if radius[name] < 0:
            raise DocumentError(f"radius for {name!r} must be non-negative")
    n = len(rows)
    coverings = []
    for col in columns:
        if col == decision:
            continue
        if col in radius:
            try:
                values = [float(_cell(r, col, i)) for i, r in enumerate(rows)]
            except (TypeError, ValueError):
                raise DocumentError(f"column {col!r}: non-numeric value") from None
            eps = radius[col]
            blocks = [[y for y in range(n) if abs(values[y] - values[x]) <= eps] for x in range(n)]
        else:
            groups: dict[str, list[int]] = {}
            for i, r in enumerate(rows):
                groups.setdefault(str(_cell(r, col, i)), []).append(i)
            blocks = list(groups.values())
        coverings.append((col, blocks))
    if not coverings:
        raise DocumentError("table has no condition attributes")
    classes: dict[str, list[int]] = {}
    for i, r in enumerate(rows):
        classes.setdefault(str(_cell(r, decision, i)), []).append(i)
    if labels is None:
        labels = [f"r{i + 1}" for i in range(n)]
    return build_system(n, coverings, list(classes.values()), labels)


def read_csv(path: str | Path) -> tuple[list[dict[str, str]], list[str]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
        return rows, list(reader.fieldnames or [])
