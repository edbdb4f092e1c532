"""Command-line interface.

Commands: validate, grid, sweep, coverage, resolve, mc-verify. Every
output byte is a pure function of the input files and flags; nothing
depends on the clock, locale or environment.

Exit codes: 0 success, 1 domain error (parse/validation failures, unknown
tags, unwritable outputs), 2 usage error (bad flags, missing files).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Sequence

from .analysis import coverage, resolvability
from .errors import LedIdError
from .export import write_grid_csv, write_grid_pgm
from .geometry import Vec3
from .link import evaluate_link
from .oracle import agreement_report
from .scenario import GridSpec, Scenario, evaluate_grid, load_scenario_with_defaults

_DEFAULT_SNR_LIST = "0,1,2,4,8,12,16"


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports its own usage errors
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (LedIdError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ledid",
        description="Simulate and plan dense LED-ID tag installations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a scenario document and print a summary")
    p.add_argument("scenario", help="path to a scenario YAML document")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("grid", help="compute a BER grid and export CSV (and optionally PGM)")
    p.add_argument("scenario")
    p.add_argument("--tag", required=True, help="data tag id")
    p.add_argument("--plane-cm", type=float, required=True,
                   help="receiver plane distance below the luminaire plane, in cm")
    p.add_argument("--res", type=int, default=64, help="cells per axis (default 64)")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--heatmap", default=None, help="optional PGM output path")
    p.add_argument("--workers", type=int, default=1, help="worker threads (default 1)")
    p.set_defaults(handler=_cmd_grid)

    p = sub.add_parser("sweep", help="compute BER grids for several plane distances")
    p.add_argument("scenario")
    p.add_argument("--tag", required=True)
    p.add_argument("--planes-cm", required=True,
                   help="comma-separated plane distances in cm, e.g. 30,40,50")
    p.add_argument("--res", type=int, default=64)
    p.add_argument("--out", required=True, help="output directory for the per-plane CSVs")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("coverage", help="maximum reliable read distance and angle for a tag")
    p.add_argument("scenario")
    p.add_argument("--tag", required=True)
    p.add_argument("--threshold", type=float, default=1e-2)
    p.set_defaults(handler=_cmd_coverage)

    p = sub.add_parser("resolve", help="per-tag resolvability on a receiver plane")
    p.add_argument("scenario")
    p.add_argument("--plane-cm", type=float, required=True)
    p.add_argument("--threshold", type=float, default=1e-2)
    p.set_defaults(handler=_cmd_resolve)

    p = sub.add_parser("mc-verify", help="Monte Carlo check of the analytic BFSK error rate")
    p.add_argument("--snr-list", default=_DEFAULT_SNR_LIST,
                   help=f"comma-separated SNR values (default {_DEFAULT_SNR_LIST})")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(handler=_cmd_mc_verify)

    return parser


def _load(path_text: str) -> tuple[Scenario, tuple[str, ...]]:
    path = Path(path_text)
    if not path.is_file():
        raise _UsageError(f"scenario file not found: {path_text}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read scenario file: {exc}") from exc
    return load_scenario_with_defaults(text)


def _cmd_validate(args: argparse.Namespace) -> int:
    scenario, applied = _load(args.scenario)
    print(f"name={scenario.name or '(unnamed)'}")
    print(f"room_m={scenario.room.width_m:g}x{scenario.room.depth_m:g}x{scenario.room.height_m:g}")
    print(f"luminaires={len(scenario.luminaires)}")
    print(f"tags={','.join(scenario.tags())}")
    for semi in sorted({lum.emitter.semi_angle_deg for lum in scenario.luminaires}):
        order = next(lum.emitter.lambertian_order for lum in scenario.luminaires
                     if lum.emitter.semi_angle_deg == semi)
        print(f"lambertian_order[semi_angle_deg={semi:g}]={order:.4f}")
    print(f"defaults_applied={','.join(applied) if applied else '(none)'}")
    return 0


def _grid_spec(scenario: Scenario, plane_cm: float, res: int) -> GridSpec:
    if res < 2:
        raise _UsageError(f"--res must be at least 2, got {res}")
    if not plane_cm > 0.0:
        raise _UsageError(f"--plane-cm must be positive, got {plane_cm:g}")
    return GridSpec.for_room(scenario.room, plane_cm / 100.0, res)


def _cmd_grid(args: argparse.Namespace) -> int:
    scenario, _ = _load(args.scenario)
    if args.workers < 1:
        raise _UsageError(f"--workers must be at least 1, got {args.workers}")
    spec = _grid_spec(scenario, args.plane_cm, args.res)
    grid = evaluate_grid(scenario, spec, args.tag, workers=args.workers)
    write_grid_csv(grid, args.out)
    print(f"csv={args.out} cells={args.res}x{args.res}")
    if args.heatmap is not None:
        write_grid_pgm(grid, args.heatmap)
        print(f"pgm={args.heatmap}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenario, _ = _load(args.scenario)
    if args.workers < 1:
        raise _UsageError(f"--workers must be at least 1, got {args.workers}")
    planes = [item.strip() for item in args.planes_cm.split(",") if item.strip()]
    if not planes:
        raise _UsageError("--planes-cm must list at least one plane distance")
    try:
        plane_values = [float(item) for item in planes]
    except ValueError as exc:
        raise _UsageError(f"--planes-cm: {exc}") from exc

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    lamps = scenario.luminaires_for(args.tag)
    for plane_cm in plane_values:
        spec = _grid_spec(scenario, plane_cm, args.res)
        grid = evaluate_grid(scenario, spec, args.tag, workers=args.workers)
        csv_path = out_dir / f"{args.tag}_plane{plane_cm:g}cm.csv"
        write_grid_csv(grid, csv_path)
        # Summary: error rate at the perpendicular foot of each of the
        # tag's lamps, reduced to min and median across those lamps.
        z = scenario.room.height_m - plane_cm / 100.0
        foot_bers = sorted(
            evaluate_link(scenario, Vec3(l.pose.position.x, l.pose.position.y, z), args.tag).ber
            for l in lamps
        )
        n = len(foot_bers)
        median = foot_bers[n // 2] if n % 2 else 0.5 * (foot_bers[n // 2 - 1] + foot_bers[n // 2])
        print(f"plane_cm={plane_cm:g} csv={csv_path} min_ber={foot_bers[0]!r} median_ber={median!r}")
    return 0


def _cmd_coverage(args: argparse.Namespace) -> int:
    scenario, _ = _load(args.scenario)
    if not args.threshold > 0.0:
        raise _UsageError(f"--threshold must be positive, got {args.threshold:g}")
    report = coverage(scenario, args.tag, threshold=args.threshold)
    print(f"tag={report.tag_id}")
    print(f"threshold_ber={report.threshold_ber!r}")
    if math.isinf(report.max_reliable_distance_m):
        print("max_reliable_distance_m=unbounded")
    else:
        print(f"max_reliable_distance_m={report.max_reliable_distance_m!r}")
    print(f"max_reliable_angle_deg={report.max_reliable_angle_deg!r}")
    return 0


def _cmd_resolve(args: argparse.Namespace) -> int:
    scenario, _ = _load(args.scenario)
    if not args.plane_cm > 0.0:
        raise _UsageError(f"--plane-cm must be positive, got {args.plane_cm:g}")
    if not args.threshold > 0.0:
        raise _UsageError(f"--threshold must be positive, got {args.threshold:g}")
    report = resolvability(scenario, args.plane_cm / 100.0, threshold=args.threshold)
    print(f"plane_cm={args.plane_cm:g}")
    print(f"threshold_ber={report.threshold_ber!r}")
    for entry in report.tags:
        flag = "yes" if entry.resolvable else "no"
        print(f"tag={entry.tag_id} min_ber_under_lamp={entry.min_ber_under_lamp!r} resolvable={flag}")
    if math.isinf(report.critical_overlap_distance_m):
        print("critical_overlap_distance_m=unbounded")
    else:
        print(f"critical_overlap_distance_m={report.critical_overlap_distance_m!r}")
    return 0


def _cmd_mc_verify(args: argparse.Namespace) -> int:
    items = [item.strip() for item in args.snr_list.split(",") if item.strip()]
    if not items:
        raise _UsageError("--snr-list must list at least one SNR")
    try:
        snr_values = tuple(float(item) for item in items)
    except ValueError as exc:
        raise _UsageError(f"--snr-list: {exc}") from exc
    if any(s < 0 for s in snr_values):
        raise _UsageError("--snr-list values must be >= 0")
    if args.trials < 1:
        raise _UsageError(f"--trials must be at least 1, got {args.trials}")
    if not 0 <= args.seed < 2 ** 64:
        raise _UsageError(f"--seed must be a 64-bit unsigned integer, got {args.seed}")

    points = agreement_report(snr_values, args.trials, args.seed)
    failures = 0
    for pt in points:
        status = "pass" if pt.within_3_sigma else "FAIL"
        failures += 0 if pt.within_3_sigma else 1
        print(f"snr={pt.snr:g} analytic={pt.analytic!r} estimate={pt.estimate!r} "
              f"std_error={pt.std_error!r} {status}")
    # At 3 sigma a rare statistical miss is expected; tolerate one point.
    ok = failures <= 1
    print(f"agreement={len(points) - failures}/{len(points)} ok={'yes' if ok else 'no'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
