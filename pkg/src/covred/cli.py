"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 validation (bad documents, inconsistent
systems, failed verification), 3 oracle guard or implicant cap exceeded.
Errors are reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from covred import io
from covred.approx import classify_consistency, regions
from covred.bench import run_bench
from covred.convert import convert_table, read_csv
from covred.core import CoveringSystem
from covred.dynamic import AddSpec, apply_event, initial_state, rebuild
from covred.errors import CovredError, DocumentError, ValidationError
from covred.reduct import (
    DEFAULT_IMPLICANT_CAP,
    DEFAULT_ORACLE_GUARD,
    oracle_reducts,
    reducts,
)
from covred.related import related_family


class UsageError(Exception):
    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, *, needs_input: bool = True) -> None:
    p.add_argument("--input", required=needs_input, help="system document (JSON) or table (CSV)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--implicant-cap", type=int, default=DEFAULT_IMPLICANT_CAP)
    p.add_argument("--oracle-guard", type=int, default=DEFAULT_ORACLE_GUARD)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="covred", description="Covering rough-set reducts, static and incremental.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="consistency verdict")
    _common(p)

    p = sub.add_parser("regions", help="lower/upper approximations and regions per decision class")
    _common(p)
    p.add_argument("--select", help="comma-separated covering names (default: all)")

    p = sub.add_parser("related", help="related family r(x)")
    _common(p)

    p = sub.add_parser("reduce", help="all reducts in canonical order")
    _common(p)
    p.add_argument("--oracle", action="store_true", help="cross-check against subset enumeration")

    p = sub.add_parser("apply", help="replay an event document")
    _common(p)
    p.add_argument("--events", required=True)
    p.add_argument("--verify", action="store_true", help="compare each state with a full rebuild")
    p.add_argument("--final-system", help="write the final system document here")

    p = sub.add_parser("bench", help="incremental vs full recomputation timing")
    _common(p, needs_input=False)
    p.add_argument("--objects", type=int, default=5000)
    p.add_argument("--coverings", type=int, default=10)
    p.add_argument("--classes", type=int, default=5)
    p.add_argument("--adds", type=int, default=100)
    p.add_argument("--deletes", type=int, default=100)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--details", action="store_true", help="include per-event rows")

    p = sub.add_parser("convert", help="decision table (CSV) to system document")
    _common(p)
    p.add_argument("--decision", required=True, help="decision column")
    p.add_argument(
        "--radius",
        action="append",
        default=[],
        metavar="COLUMN=R",
        help="mark COLUMN numeric with neighbourhood radius R (repeatable)",
    )
    p.add_argument("--id-column", help="column holding object labels")
    return parser


def _load_system(path: str) -> CoveringSystem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return io.parse_system(text)


def _named(ids, system: CoveringSystem) -> list[str]:
    labels = system.labels()
    return [labels[i] for i in ids]


def _selection(system: CoveringSystem, spec: str | None) -> list[int]:
    names = system.covering_names()
    if not spec:
        return list(range(len(names)))
    out = []
    for name in spec.split(","):
        name = name.strip()
        if name not in names:
            raise UsageError(f"unknown covering {name!r}")
        out.append(names.index(name))
    return out


def _family_doc(system: CoveringSystem, family) -> dict:
    names = system.covering_names()
    labels = system.labels()
    return {
        "related_family": {labels[x]: [names[c] for c in sorted(r)] for x, r in family.items()},
        "outside_positive": [labels[x] for x, m in enumerate(family.masks) if not m],
        "distinct": sorted(
            ([names[c] for c in sorted(r)] for r in {family.r(x) for x, _ in family.items()}),
            key=lambda s: (len(s), s),
        ),
    }


def cmd_check(args) -> dict:
    system = _load_system(args.input)
    report = regions(system)
    return {
        "verdict": classify_consistency(system).value,
        "universe_size": system.universe_size,
        "positive_size": len(report.positive),
        "outside_positive": _named(system.universe - report.positive, system),
        "diagnostics": list(system.diagnostics),
    }


def cmd_regions(args) -> dict:
    system = _load_system(args.input)
    sel = _selection(system, args.select)
    report = regions(system, sel)
    classes = []
    for j, cls in enumerate(system.decision.classes):
        low, up = report.per_class[j]
        classes.append(
            {
                "index": j,
                "members": _named(cls, system),
                "lower": _named(low, system),
                "upper": _named(up, system),
                "boundary": _named(report.boundary[j], system),
                "negative": _named(report.negative[j], system),
            }
        )
    return {
        "selection": [system.coverings[i].name for i in sel],
        "positive": _named(report.positive, system),
        "classes": classes,
    }


def cmd_related(args) -> dict:
    system = _load_system(args.input)
    return _family_doc(system, related_family(system))


def cmd_reduce(args) -> dict:
    system = _load_system(args.input)
    found = reducts(system, args.implicant_cap)
    names = system.covering_names()
    out = {"kind": found.kind, "count": len(found), "reducts": found.named(names)}
    if args.oracle:
        oracle = oracle_reducts(system, args.oracle_guard)
        out["oracle_agrees"] = oracle.as_sets() == found.as_sets()
        if not out["oracle_agrees"]:
            raise ValidationError("related-family reducts disagree with subset enumeration")
    return out


def _state_doc(index: int, record: dict, state) -> dict:
    system = state.system
    names = system.covering_names()
    fam = state.family
    doc = {
        "event": index,
        "op": record.get("op"),
        "label": record.get("label"),
        "universe_size": system.universe_size,
        "consistent": state.consistent,
        "positive_size": len(fam),
        "distinct_r": len(fam.distinct()),
        "kind": None if state.reducts is None else state.reducts.kind,
        "reducts": None if state.reducts is None else state.reducts.named(names),
    }
    if state.stats is not None:
        doc["examinations"] = {
            "inside_r": state.stats.inside,
            "outside_r": state.stats.outside,
            "new_object": state.stats.new_object,
        }
    if system.diagnostics:
        doc["diagnostics"] = list(system.diagnostics)
    return doc


def cmd_apply(args) -> dict:
    system = _load_system(args.input)
    try:
        records = io.load_events(Path(args.events).read_text())
    except OSError as exc:
        raise DocumentError(f"cannot read {args.events}: {exc.strerror}") from None
    state = initial_state(system, args.implicant_cap)
    names = system.covering_names()
    out = {
        "initial": {
            "universe_size": system.universe_size,
            "consistent": state.consistent,
            "reducts": None if state.reducts is None else state.reducts.named(names),
        },
        "events": [],
    }
    for i, record in enumerate(records):
        spec = io.parse_event(record, state.system, f"events[{i}]")
        state = apply_event(state, spec, args.implicant_cap)
        if isinstance(spec, AddSpec):
            record = {**record, "label": state.system.labels()[-1]}
        doc = _state_doc(i, record, state)
        if args.verify:
            doc["matches_rebuild"] = state == rebuild(state, args.implicant_cap)
            if not doc["matches_rebuild"]:
                raise ValidationError(f"event {i}: incremental state differs from rebuild")
        out["events"].append(doc)
    if args.final_system:
        Path(args.final_system).write_text(io.serialize_system(state.system))
    return out


def cmd_bench(args) -> dict:
    system = _load_system(args.input) if args.input else None
    report = run_bench(
        system,
        objects=args.objects,
        coverings=args.coverings,
        classes=args.classes,
        adds=args.adds,
        deletes=args.deletes,
        trials=args.trials,
        seed=args.seed,
        cap=args.implicant_cap,
    )
    doc = report.to_dict() if args.details else {"config": report.config, "summary": report.summary()}
    s = report.summary()["all"]
    print(
        f"bench {report.summary()['status']}: median incremental {s['median_incremental_s'] * 1e3:.3f} ms, "
        f"median full {s['median_full_s'] * 1e3:.3f} ms, speedup {s['speedup']:.1f}x",
        file=sys.stderr,
    )
    if report.failed:
        doc["_failed"] = True
    return doc


def _parse_radius(items: list[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.rpartition("=")
        if not sep or not name:
            raise UsageError(f"--radius expects COLUMN=R, got {item!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise UsageError(f"--radius {item!r}: R must be a number") from None
    return out


def cmd_convert(args) -> dict:
    try:
        rows, columns = read_csv(args.input)
    except OSError as exc:
        raise DocumentError(f"cannot read {args.input}: {exc.strerror}") from None
    labels = None
    if args.id_column:
        if args.id_column not in columns:
            raise DocumentError(f"id column {args.id_column!r} not in table")
        labels = [r[args.id_column] for r in rows]
        columns = [c for c in columns if c != args.id_column]
    system = convert_table(rows, args.decision, _parse_radius(args.radius), columns, labels)
    return io.system_to_dict(system)


COMMANDS = {
    "check": cmd_check,
    "regions": cmd_regions,
    "related": cmd_related,
    "reduce": cmd_reduce,
    "apply": cmd_apply,
    "bench": cmd_bench,
    "convert": cmd_convert,
}


def _error(kind: str, message: str, code: int, **extra) -> int:
    record = {"error": kind, "message": message, "exit_code": code, **extra}
    print(json.dumps(record), file=sys.stderr)
    return code


def run_command(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc = COMMANDS[args.command](args)
    except UsageError as exc:
        return _error("usage", str(exc), 1)
    except ValidationError as exc:
        return _error(
            type(exc).__name__, str(exc), exc.exit_code, violations=[str(v) for v in exc.violations]
        )
    except CovredError as exc:
        return _error(type(exc).__name__, str(exc), exc.exit_code)
    failed = isinstance(doc, dict) and doc.pop("_failed", False)
    text = io.dumps(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if failed:
        return _error("BenchFailed", "incremental and full recomputation disagree", 2)
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
