"""Command-line driver: model selection, experiments, deterministic output files.

Subcommands: ``fringe``, ``scan``, ``verify``, ``cancel``, ``model-dump``.
Every command takes ``--seed`` and produces byte-identical output for fixed
arguments and version. Exit codes: 0 pass/consistent, 10 violation verdict,
2 usage error, 3 I/O error. The env var GBIT_THREADS caps worker count for
sample scans without affecting output bytes.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .reporting import RunManifest, canonical_json
from .groups import Quaternion, embed_5, left_isoclinic, plane_rotation, u2_phase
from .models import build_model, model_to_json_obj
from .mzi import fringe_scan
from .lab import (
    cancellation_residual,
    closed_form_cancellation,
    scan_violation,
    verify_theorem1,
    verify_theorem2,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VIOLATING = 10

THEOREM2_CASES = ("real-d2", "complex-d3", "u2-d4", "quaternion-d5")


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _worker_count() -> int:
    raw = os.environ.get("GBIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(content: str, out: str | None) -> int:
    """Write to the output path (exit 3 on I/O failure) or to stdout."""
    if out is None:
        sys.stdout.write(content)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(content)
    except OSError as exc:
        print(f"error: cannot write {out!r}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _manifest(command: str, parameters: dict, seed: int, out: str | None) -> RunManifest:
    return RunManifest(
        command=command,
        parameters=parameters,
        seed=seed,
        version=__version__,
        outputs=(out,) if out else (),
    )


def cmd_fringe(args) -> int:
    if args.points < 2:
        return _usage_error("--points must be at least 2")
    try:
        spec = build_model(args.model)
        table = fringe_scan(spec, args.points)
    except ValueError as exc:
        return _usage_error(str(exc))
    manifest = _manifest("fringe", {"model": args.model, "points": args.points}, args.seed, args.out)
    status = _emit(table.to_csv(manifest), args.out)
    if status == EXIT_OK and args.out:
        print(f"wrote {len(table.rows)} rows to {args.out}")
    return status


def cmd_scan(args) -> int:
    if args.samples < 1:
        return _usage_error("--samples must be at least 1")
    try:
        spec = build_model(args.model)
    except ValueError as exc:
        return _usage_error(str(exc))
    report = scan_violation(spec, samples=args.samples, seed=args.seed, workers=_worker_count())
    obj = report.to_json_obj()
    obj["manifest"] = _manifest(
        "scan", {"model": args.model, "samples": args.samples}, args.seed, args.out
    ).as_obj()
    status = _emit(canonical_json(obj), args.out)
    if status != EXIT_OK:
        return status
    if args.out:
        print(f"{report.verdict}: max discrepancy {report.max_discrepancy:.6g} over {report.samples} samples")
    return EXIT_VIOLATING if report.verdict == "violating" else EXIT_OK


def cmd_verify(args) -> int:
    workers = _worker_count()
    if args.target == "theorem1":
        if args.dmax < 3:
            return _usage_error("--dmax must be at least 3")
        report = verify_theorem1(args.dmax, samples=args.samples, seed=args.seed, workers=workers)
        obj = report.to_json_obj()
        obj["dmax"] = args.dmax
        overall = report.overall
        parameters = {"target": args.target, "dmax": args.dmax, "samples": args.samples}
    elif args.target.startswith("theorem2-"):
        case_id = args.target.removeprefix("theorem2-")
        if case_id not in THEOREM2_CASES:
            return _usage_error(f"unknown theorem-2 case {case_id!r}; choose from {THEOREM2_CASES}")
        report = verify_theorem2(case_id, scan_samples=args.samples, seed=args.seed, workers=workers)
        obj = report.to_json_obj()
        overall = report.overall
        parameters = {"target": args.target, "samples": args.samples}
    else:
        return _usage_error(f"unknown verify target {args.target!r}")
    obj["manifest"] = _manifest("verify", parameters, args.seed, args.out).as_obj()
    status = _emit(canonical_json(obj), args.out)
    if status != EXIT_OK:
        return status
    if args.out:
        print(f"{args.target}: {'pass' if overall else 'FAIL'}")
    return EXIT_OK if overall else EXIT_FAIL


def _build_cancel_arm(args, spec):
    if spec.case_id in ("complex-d3", "u2-d4"):
        if args.angle is None:
            raise ValueError(f"model {spec.case_id} takes --angle")
        if args.q is not None:
            raise ValueError(f"model {spec.case_id} takes --angle, not --q")
        arm = plane_rotation(3, 1, 2, args.angle) if spec.case_id == "complex-d3" else u2_phase(args.angle)
        return arm, {"angle": float(args.angle)}
    if spec.case_id == "quaternion-d5":
        if args.q is None:
            raise ValueError("model quaternion-d5 takes --q")
        if args.angle is not None:
            raise ValueError("model quaternion-d5 takes --q, not --angle")
        q = Quaternion.parse(args.q)
        if not q.is_unit:
            raise ValueError(f"--q must be a unit quaternion, got norm {q.norm()!r}")
        return embed_5(left_isoclinic(q)), {"q": [q.w, q.x, q.y, q.z]}
    raise ValueError(f"model {spec.case_id!r} has no cancellation experiment")


def cmd_cancel(args) -> int:
    if args.trials < 1:
        return _usage_error("--trials must be at least 1")
    try:
        spec = build_model(args.model)
        arm_a, parameter = _build_cancel_arm(args, spec)
        result = cancellation_residual(arm_a, spec, trials=args.trials, seed=args.seed)
    except ValueError as exc:
        return _usage_error(str(exc))
    closed_form = closed_form_cancellation(spec, arm_a)
    obj = {
        "case": spec.case_id,
        "parameter": parameter,
        "residual": result.residual,
        "closed_form": closed_form,
        "best_arm_b": result.best_arm_b.matrix.tolist(),
        "best_params": list(result.best_params),
        "trials": result.trials,
        "seed": result.seed,
        "manifest": _manifest(
            "cancel", {"model": args.model, **parameter, "trials": args.trials}, args.seed, args.out
        ).as_obj(),
    }
    status = _emit(canonical_json(obj), args.out)
    if status == EXIT_OK and args.out:
        print(f"residual {result.residual:.6g}")
    return status


def cmd_model_dump(args) -> int:
    try:
        spec = build_model(args.model)
    except ValueError as exc:
        return _usage_error(str(exc))
    obj = model_to_json_obj(spec)
    obj["manifest"] = _manifest("model-dump", {"model": args.model}, args.seed, args.out).as_obj()
    return _emit(canonical_json(obj), args.out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbit",
        description="Generalized-bit interferometer lab: fringes, order scans, theorem checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fringe = sub.add_parser("fringe", help="scan a one-parameter phase family and write a CSV fringe")
    fringe.add_argument("--model", required=True)
    fringe.add_argument("--points", type=int, default=64)
    fringe.add_argument("--seed", type=int, default=42)
    fringe.add_argument("--out")
    fringe.set_defaults(func=cmd_fringe)

    scan = sub.add_parser("scan", help="sample arm pairs and report the order-discrepancy verdict")
    scan.add_argument("--model", required=True)
    scan.add_argument("--samples", type=int, default=1000)
    scan.add_argument("--seed", type=int, default=42)
    scan.add_argument("--out")
    scan.set_defaults(func=cmd_scan)

    verify = sub.add_parser("verify", help="run theorem1 or theorem2-<case> check suites")
    verify.add_argument("target")
    verify.add_argument("--dmax", type=int, default=8)
    verify.add_argument("--samples", type=int, default=1000)
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--out")
    verify.set_defaults(func=cmd_verify)

    cancel = sub.add_parser("cancel", help="search arm B for a transform undoing a given arm-A phase")
    cancel.add_argument("--model", required=True)
    cancel.add_argument("--angle", type=float)
    cancel.add_argument("--q", help="unit quaternion: w,x,y,z or one of 1, -1, i, j, k")
    cancel.add_argument("--trials", type=int, default=32)
    cancel.add_argument("--seed", type=int, default=42)
    cancel.add_argument("--out")
    cancel.set_defaults(func=cmd_cancel)

    dump = sub.add_parser("model-dump", help="print a model case as JSON (generators, detector axis)")
    dump.add_argument("--model", required=True)
    dump.add_argument("--seed", type=int, default=42)
    dump.add_argument("--out")
    dump.set_defaults(func=cmd_model_dump)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
