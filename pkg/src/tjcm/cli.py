"""Command-line interface.

Subcommands:

    tjcm simulate <manifest>                 run a manifest file
    tjcm preset <name> [--out DIR]           run a built-in figure preset
    tjcm preset --list                       list preset names
    tjcm analyze <csv> [--prominence P] [--window W]
                                             revival-collapse report for a CSV
    tjcm compare <csv-a> <csv-b> [--tol T]   revival alignment of two CSVs

The TJCM_EPSILON environment variable overrides the default truncation
tolerance for manifests that do not set ``epsilon`` themselves.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import align_revivals, detect_revivals, render_report
from .errors import ConfigError, ManifestError
from .manifest import get_preset, parse_csv, parse_manifest, presets, run


def _cmd_simulate(args) -> int:
    text = Path(args.manifest).read_text(encoding="utf-8")
    manifest = parse_manifest(text)
    for path in run(manifest):
        print(path)
    return 0


def _cmd_preset(args) -> int:
    if args.list:
        for name, manifest in sorted(presets().items()):
            cfg = manifest.cfg
            print(f"{name}: (k1,k2)=({cfg.k1},{cfg.k2}) (l1,l2)=({cfg.l1},{cfg.l2}) "
                  f"alpha=({cfg.alpha1},{cfg.alpha2}) T=[{manifest.t_min},{manifest.t_max}] "
                  f"quantity={manifest.quantities[0]}")
        return 0
    if args.name is None:
        print("error: preset name required (or --list)", file=sys.stderr)
        return 2
    manifest = get_preset(args.name, out_dir=args.out)
    for path in run(manifest):
        print(path)
    return 0


def _cmd_analyze(args) -> int:
    ts = parse_csv(Path(args.csv).read_text(encoding="utf-8"))
    report = detect_revivals(ts, prominence=args.prominence, window=args.window)
    sys.stdout.write(render_report(report, extra={"quantity": ts.label,
                                                  "source": args.csv}))
    return 0


def _cmd_compare(args) -> int:
    ts_a = parse_csv(Path(args.csv_a).read_text(encoding="utf-8"))
    ts_b = parse_csv(Path(args.csv_b).read_text(encoding="utf-8"))
    rep_a = detect_revivals(ts_a)
    rep_b = detect_revivals(ts_b)
    tol = args.tol
    if tol is None:
        period = rep_b.period_estimate or rep_a.period_estimate
        if period is None:
            print("error: no period detected in either series; pass --tol",
                  file=sys.stderr)
            return 2
        tol = 0.05 * period
    score = align_revivals(rep_a, rep_b, tol)
    print(f"alignment = {score!r}")
    print(f"tol = {tol!r}")
    print(f"revivals_a = {len(rep_a.revival_times)}")
    print(f"revivals_b = {len(rep_b.revival_times)}")
    if rep_a.period_estimate and rep_b.period_estimate:
        print(f"period_ratio = {rep_a.period_estimate / rep_b.period_estimate!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tjcm",
        description="Two-mode multiphoton Jaynes-Cummings simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a manifest file")
    p.add_argument("manifest", help="path to a key = value manifest")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("preset", help="run a built-in figure preset")
    p.add_argument("name", nargs="?", help="preset name, e.g. fig1")
    p.add_argument("--out", default=None, help="output directory (default .)")
    p.add_argument("--list", action="store_true", help="list available presets")
    p.set_defaults(fn=_cmd_preset)

    p = sub.add_parser("analyze", help="revival-collapse report for a CSV")
    p.add_argument("csv", help="CSV produced by simulate/preset")
    p.add_argument("--prominence", type=float, default=None)
    p.add_argument("--window", type=float, default=None)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("compare", help="align revivals of two CSVs")
    p.add_argument("csv_a")
    p.add_argument("csv_b")
    p.add_argument("--tol", type=float, default=None,
                   help="match tolerance (default 5%% of the detected period)")
    p.set_defaults(fn=_cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ManifestError as exc:
        for field, reason in exc.problems:
            print(f"error: {field}: {reason}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
