"""Incremental vs. full recomputation of the related family, event by event.

For every event the updated system is built once (shared, untimed).  Then the
incremental patch of the family and witness cache is timed against a full
recomputation of witness blocks and family from the updated system.  Both
results, and the reduct sets derived from them, must agree.
"""

from __future__ import annotations

import gc
import random
import statistics
import time
from dataclasses import asdict, dataclass, field

from covred.core import CoveringSystem
from covred.dynamic import (
    AddSpec,
    IncrementalState,
    state_reducts,
    add_object,
    delete_object,
    initial_state,
    update_family_add,
    update_family_delete,
)
from covred.reduct import DEFAULT_IMPLICANT_CAP, absorb
from covred.related import family_from_witnesses, witness_blocks
from covred.synth import random_add, random_consistent_system, random_delete


@dataclass
class EventTiming:
    trial: int
    index: int
    kind: str
    incremental_s: float
    full_s: float
    universe_size: int
    positive_size: int
    family_size: int
    clause_count: int
    reduct_count: int
    consistent: bool
    match: bool
    violations: int


@dataclass
class BenchReport:
    config: dict
    events: list[EventTiming] = field(default_factory=list)
    build_s: float = 0.0

    @property
    def failed(self) -> bool:
        return not self.events or any(not e.match or e.violations for e in self.events)

    def _median(self, attr: str, kind: str | None = None) -> float:
        vals = [getattr(e, attr) for e in self.events if kind is None or e.kind == kind]
        return statistics.median(vals) if vals else float("nan")

    def summary(self) -> dict:
        out = {"status": "FAILED" if self.failed else "OK", "events": len(self.events)}
        for kind in (None, "add", "delete"):
            key = kind or "all"
            inc = self._median("incremental_s", kind)
            full = self._median("full_s", kind)
            out[key] = {
                "median_incremental_s": inc,
                "median_full_s": full,
                "speedup": full / inc if inc > 0 else float("inf"),
            }
        out["mismatches"] = sum(not e.match for e in self.events)
        out["violations"] = sum(e.violations for e in self.events)
        out["initial_build_s"] = self.build_s
        return out

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "summary": self.summary(),
            "events": [asdict(e) for e in self.events],
        }


def _timed(fn, *args):
    gc.disable()
    try:
        t0 = time.perf_counter()
        out = fn(*args)
        return out, time.perf_counter() - t0
    finally:
        gc.enable()


def _full_steps(system: CoveringSystem):
    wit = witness_blocks(system)
    return family_from_witnesses(system, wit), wit


def run_events(
    state: IncrementalState,
    kinds: list[str],
    rng: random.Random,
    trial: int = 0,
    cap: int = DEFAULT_IMPLICANT_CAP,
) -> tuple[IncrementalState, list[EventTiming]]:
    rows = []
    for i, kind in enumerate(kinds):
        system = state.system
        if kind == "add":
            spec: AddSpec = random_add(rng, system, state=state)
            delta = add_object(system, spec)
            (fam, wit, stats), t_inc = _timed(update_family_add, state, delta, spec)
        else:
            delta = delete_object(system, random_delete(rng, system).obj)
            (fam, wit, stats), t_inc = _timed(update_family_delete, state, delta)
        (fam_full, wit_full), t_full = _timed(_full_steps, delta.system)
        red = state_reducts(fam, cap)
        red_full = state_reducts(fam_full, cap)
        match = fam == fam_full and wit == wit_full and red == red_full
        rows.append(
            EventTiming(
                trial=trial,
                index=i,
                kind=kind,
                incremental_s=t_inc,
                full_s=t_full,
                universe_size=delta.system.universe_size,
                positive_size=len(fam),
                family_size=len(fam.distinct()),
                clause_count=len(absorb(fam.distinct())),
                reduct_count=0 if red is None else len(red),
                consistent=all(fam.masks),
                match=match,
                violations=stats.violations,
            )
        )
        state = IncrementalState(delta.system, fam, wit, red, stats)
    return state, rows


def run_bench(
    system: CoveringSystem | None = None,
    *,
    objects: int = 5000,
    coverings: int = 10,
    classes: int = 5,
    adds: int = 100,
    deletes: int = 100,
    trials: int = 1,
    seed: int = 0,
    cap: int = DEFAULT_IMPLICANT_CAP,
) -> BenchReport:
    """Replay ``adds`` add and ``deletes`` delete events (shuffled) per trial.

    Without ``system`` each trial draws a synthetic consistent system.
    """
    report = BenchReport(
        config={
            "source": "input" if system is not None else "synthetic",
            "objects": system.universe_size if system is not None else objects,
            "coverings": len(system.coverings) if system is not None else coverings,
            "classes": len(system.decision.classes) if system is not None else classes,
            "adds": adds,
            "deletes": deletes,
            "trials": trials,
            "seed": seed,
        }
    )
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        base = system
        if base is None:
            base = random_consistent_system(rng, objects, coverings, classes)
        state, build = _timed(initial_state, base, cap)
        report.build_s += build
        kinds = ["add"] * adds + ["delete"] * deletes
        rng.shuffle(kinds)
        _, rows = run_events(state, kinds, rng, t, cap)
        report.events.extend(rows)
    return report
