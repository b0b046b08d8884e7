"""Walk through the bundled golden system: static reducts, one add, one delete.

    python scripts/golden_walkthrough.py
"""

from __future__ import annotations

from pathlib import Path

from covred import io
from covred.dynamic import apply_event, initial_state, rebuild

DATA = Path(__file__).resolve().parent.parent / "data"


def show(title, state) -> None:
    system = state.system
    names = system.covering_names()
    print(f"== {title}: {system.universe_size} objects, consistent={state.consistent}")
    for x, r in state.family.items():
        print(f"  r({system.label(x)}) = {{{', '.join(names[c] for c in sorted(r))}}}")
    reds = state.reducts.named(names) if state.reducts else []
    print("  reducts:", "  ".join("{" + ",".join(r) + "}" for r in reds))
    if state.stats is not None:
        print(f"  examinations: inside r(x) {state.stats.inside}, outside {state.stats.outside}")
    print(f"  matches full rebuild: {state == rebuild(state)}")


def main() -> None:
    base = initial_state(io.parse_system(DATA / "golden_base.json"))
    show("base", base)
    for name in ("golden_add_event.json", "golden_delete_event.json"):
        record = io.load_events(DATA / name)[0]
        state = apply_event(base, io.parse_event(record, base.system))
        show(f"{record['op']} {record['label']}", state)


if __name__ == "__main__":
    main()
