#!/usr/bin/env python3
"""Replay a construction trace file and verify it reproduces every step.

Usage: python scripts/replay_trace.py trace.json [trace2.json ...]
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from quadricheck.constructions import ConstructionTrace, replay_trace


def main(paths):
    if not paths:
        print("usage: replay_trace.py trace.json [...]", file=sys.stderr)
        return 2
    failed = False
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            trace = ConstructionTrace.from_json(json.load(fh))
        outputs = replay_trace(trace)
        mismatches = [
            step.step_id
            for step, got in zip(trace.steps, outputs)
            if got != step.output
        ]
        if mismatches:
            failed = True
            print(f"{path}: {len(trace.steps)} steps, MISMATCH at {mismatches}")
        else:
            print(f"{path}: {len(trace.steps)} steps replayed bit-exactly")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
