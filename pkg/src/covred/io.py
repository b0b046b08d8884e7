"""JSON documents for covering systems and event streams.

Field names are frozen in ``docs/format.md``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from covred.core import CoveringSystem, system_from_labels
from covred.dynamic import AddSpec, DeleteSpec, UpdateSpec
from covred.errors import DocumentError, ValidationError

SYSTEM_FORMAT = "covering-system"
EVENTS_FORMAT = "covering-events"
VERSION = 1


def _load(document: str | bytes | dict | Path) -> dict:
    if isinstance(document, dict):
        return document
    if isinstance(document, Path):
        document = document.read_text()
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DocumentError("top-level JSON value must be an object")
    return data


def _header(data: dict, fmt: str) -> None:
    if data.get("format") != fmt:
        raise DocumentError(f"expected format {fmt!r}, got {data.get('format')!r}")
    if data.get("version") != VERSION:
        raise DocumentError(f"unsupported version {data.get('version')!r}")


def _string_lists(value: Any, where: str) -> list[list[str]]:
    if not isinstance(value, list):
        raise DocumentError(f"{where}: expected a list of label lists")
    out = []
    for i, item in enumerate(value):
        if not isinstance(item, list) or not all(isinstance(s, str) for s in item):
            raise DocumentError(f"{where}[{i}]: expected a list of object labels")
        out.append(item)
    return out


def parse_system(document: str | bytes | dict | Path) -> CoveringSystem:
    """Parse and validate a system document.

    Duplicate blocks are removed and reported in ``system.diagnostics``.
    """
    data = _load(document)
    _header(data, SYSTEM_FORMAT)
    objects = data.get("objects")
    if not isinstance(objects, list) or not all(isinstance(s, str) for s in objects):
        raise DocumentError("objects: expected a list of labels")
    size = data.get("universe_size", len(objects))
    if size != len(objects):
        raise DocumentError(f"universe_size {size} != {len(objects)} listed objects")
    covs = data.get("coverings")
    if not isinstance(covs, list) or not covs:
        raise DocumentError("coverings: expected a non-empty list")
    parsed = []
    for i, cov in enumerate(covs):
        if not isinstance(cov, dict) or not isinstance(cov.get("name"), str):
            raise DocumentError(f"coverings[{i}]: expected an object with a name")
        blocks = _string_lists(cov.get("blocks"), f"coverings[{i}].blocks")
        for b, block in enumerate(blocks):
            if not block:
                raise ValidationError(
                    f"covering {i} ({cov['name']}) block {b} is empty",
                )
        parsed.append((cov["name"], blocks))
    names = [name for name, _ in parsed]
    if len(set(names)) != len(names):
        raise DocumentError("covering names must be unique")
    decision = _string_lists(data.get("decision"), "decision")
    return system_from_labels(objects, parsed, decision)


def system_to_dict(system: CoveringSystem) -> dict:
    labels = system.labels()
    return {
        "format": SYSTEM_FORMAT,
        "version": VERSION,
        "universe_size": system.universe_size,
        "objects": list(labels),
        "coverings": [
            {"name": cov.name, "blocks": [[labels[x] for x in b] for b in cov.blocks]}
            for cov in system.coverings
        ],
        "decision": [[labels[x] for x in cl] for cl in system.decision.classes],
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def serialize_system(system: CoveringSystem) -> str:
    return dumps(system_to_dict(system))


def parse_event(record: dict, system: CoveringSystem, where: str = "event") -> UpdateSpec:
    """Resolve one event record against the system it applies to."""
    if not isinstance(record, dict):
        raise DocumentError(f"{where}: expected an object")
    op = record.get("op")
    labels = system.labels()
    if op == "delete":
        label = record.get("label")
        try:
            return DeleteSpec(labels.index(label))
        except ValueError:
            raise DocumentError(f"{where}: unknown object label {label!r}") from None
    if op != "add":
        raise DocumentError(f"{where}: op must be 'add' or 'delete', got {op!r}")
    blocks = record.get("blocks")
    if not isinstance(blocks, dict):
        raise DocumentError(f"{where}: blocks must map covering names to block indices")
    names = system.covering_names()
    unknown = set(blocks) - set(names)
    if unknown:
        raise DocumentError(f"{where}: unknown coverings {sorted(unknown)}")
    picks = []
    for name in names:
        chosen = blocks.get(name, [])
        if not isinstance(chosen, list) or not all(isinstance(b, int) for b in chosen):
            raise DocumentError(f"{where}: blocks[{name!r}] must be a list of integers")
        picks.append(tuple(chosen))
    cls = record.get("class")
    if not isinstance(cls, int):
        raise DocumentError(f"{where}: class must be an integer decision-class index")
    label = record.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError(f"{where}: label must be a string")
    return AddSpec(tuple(picks), cls, label)


def load_events(document: str | bytes | dict | Path) -> list[dict]:
    """Raw event records; each is resolved with :func:`parse_event` at replay time."""
    data = _load(document)
    _header(data, EVENTS_FORMAT)
    events = data.get("events")
    if not isinstance(events, list):
        raise DocumentError("events: expected a list")
    return events


def event_to_dict(spec: UpdateSpec, system: CoveringSystem) -> dict:
    labels = system.labels()
    if isinstance(spec, DeleteSpec):
        return {"op": "delete", "label": labels[spec.obj]}
    out = {
        "op": "add",
        "blocks": {cov.name: sorted(p) for cov, p in zip(system.coverings, spec.absorbing)},
        "class": spec.decision_class,
    }
    if spec.label is not None:
        out["label"] = spec.label
    return out


def events_document(records: list[dict]) -> dict:
    return {"format": EVENTS_FORMAT, "version": VERSION, "events": records}
