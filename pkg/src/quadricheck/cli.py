"""Command-line surface: decide a configuration, generate fixtures, fuzz.

Exit codes: 0 success, 2 malformed input or unknown kind, 3 disagreement
between the synthetic pipeline and the determinant oracle (must never
happen in a correct build).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import fixtures, reductions
from .oracle import oracle_decide, sample_generic, sample_on_quadric
from .projective import Point


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class InputConfig:
    """Exactly ten points, with an optional label-hint permutation that is
    applied before the pipeline runs (verdicts are relabeling-invariant, so
    hints only steer which labeling the decision reports)."""

    points: tuple
    labels: tuple | None = None

    def labeled_points(self) -> list:
        if self.labels is None:
            return list(self.points)
        return [self.points[i] for i in self.labels]


def load_points(payload) -> InputConfig:
    if not isinstance(payload, dict) or "points" not in payload:
        raise ConfigError("input must be a JSON object with a 'points' array")
    raw = payload["points"]
    if not isinstance(raw, list) or len(raw) != 10:
        raise ConfigError("'points' must hold exactly 10 entries")
    points = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 4:
            raise ConfigError("each point is an array of 4 rational strings")
        try:
            points.append(Point(Fraction(str(c)) for c in entry))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad point {entry}: {exc}") from None
    labels = payload.get("labels")
    if labels is not None:
        if sorted(labels) != list(range(10)):
            raise ConfigError("'labels' must be a permutation of 0..9")
        labels = tuple(int(i) for i in labels)
    return InputConfig(tuple(points), labels)


def load_config(path) -> InputConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    return load_points(payload)


def points_to_json(points):
    return {"points": [p.to_strings() for p in points]}


def _dump(payload, pretty):
    if pretty:
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def cmd_decide(args) -> int:
    try:
        points = load_config(args.file).labeled_points()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"decision": None, "oracle_verdict": None, "agreement": None, "timings": {}}
    decision = None
    if args.method in ("synthetic", "both"):
        start = time.perf_counter()
        decision = reductions.decide(points, with_trace=args.trace is not None)
        report["timings"]["synthetic_seconds"] = time.perf_counter() - start
        decision_json = decision.to_json()
        if args.trace is not None:
            trace_payload = decision.trace.to_json() if decision.trace else {"steps": []}
            with open(args.trace, "w", encoding="utf-8") as fh:
                fh.write(_dump(trace_payload, args.pretty))
            decision_json["trace_ref"] = args.trace
        report["decision"] = decision_json
    if args.method in ("oracle", "both"):
        start = time.perf_counter()
        report["oracle_verdict"] = oracle_decide(points)
        report["timings"]["oracle_seconds"] = time.perf_counter() - start
    if args.method == "both":
        report["agreement"] = decision.on_quadric == report["oracle_verdict"]
        if not report["agreement"]:
            report["configuration"] = points_to_json(points)["points"]
    sys.stdout.write(_dump(report, args.pretty))
    if report["agreement"] is False:
        return 3
    return 0


def cmd_gen(args) -> int:
    kind = args.kind
    try:
        if kind == "on-quadric":
            points = sample_on_quadric(args.seed, 10, transformed=True, bound=30)
        elif kind == "generic":
            points = fixtures.generate_branch("generic", args.seed)
        elif kind.startswith("qd-branch:"):
            points = fixtures.generate_branch(kind.split(":", 1)[1], args.seed)
        else:
            raise fixtures.FixtureError(f"unknown kind {kind!r}")
    except fixtures.FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = _dump(points_to_json(points), args.pretty)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def fuzz_configuration(seed, index):
    """Mixed stream: on-quadric, generic, and the three degenerate
    mutations (duplication, collinear collapse, coplanar collapse)."""
    shape = index % 5
    sub = f"{seed}:{index}"
    if shape == 0:
        return sample_on_quadric(sub, 10, transformed=index % 2 == 0, bound=30)
    if shape == 1:
        return sample_generic(sub, 10, bound=60)
    if shape == 2:
        return fixtures.mutate_duplicate(sub)
    if shape == 3:
        return fixtures.mutate_collinear(sub)
    return fixtures.mutate_coplanar(sub)


def cmd_fuzz(args) -> int:
    disagreements = []
    for index in range(args.count):
        points = fuzz_configuration(args.seed, index)
        decision = reductions.decide(points)
        truth = oracle_decide(points)
        if decision.on_quadric != truth:
            disagreements.append(
                {
                    "index": index,
                    "branch": decision.branch,
                    "points": points_to_json(points)["points"],
                }
            )
    summary = {
        "seed": args.seed,
        "count": args.count,
        "agreements": args.count - len(disagreements),
        "disagreements": disagreements,
    }
    sys.stdout.write(_dump(summary, args.pretty))
    return 3 if disagreements else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadricheck",
        description="Decide whether 10 points of P^3 lie on a quadric surface, "
        "synthetically and by the exact 10x10 determinant.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="decide a 10-point configuration file")
    p_decide.add_argument("file", help="JSON file with a 'points' array of 10 points")
    p_decide.add_argument(
        "--method", choices=("synthetic", "oracle", "both"), default="both"
    )
    p_decide.add_argument("--trace", default=None, help="write the construction trace here")
    p_decide.add_argument("--pretty", action="store_true")
    p_decide.set_defaults(func=cmd_decide)

    kinds = ["on-quadric", "generic"] + [
        f"qd-branch:{k}" for k in fixtures.GENERATED_KINDS
    ]
    p_gen = sub.add_parser("gen", help="generate a deterministic fixture")
    p_gen.add_argument("--kind", required=True, help="one of: " + ", ".join(kinds))
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None)
    p_gen.add_argument("--pretty", action="store_true")
    p_gen.set_defaults(func=cmd_gen)

    p_fuzz = sub.add_parser("fuzz", help="compare pipeline and oracle on mixed configs")
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--count", type=int, default=100)
    p_fuzz.add_argument("--pretty", action="store_true")
    p_fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
