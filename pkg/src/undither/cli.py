"""Command-line front end.

Subcommands: dither, undither, metrics, histogram, profile.

Exit codes: 0 success, 1 usage error, 2 I/O or format error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .diffuse import DiffusionError, DiffusionParams
from .dither import DitherMethod
from .pipeline import CSV_COLUMNS, PipelineConfig, PipelineError, SnapshotPolicy, measure, undither
from .raster import PgmError, histogram, load_pgm, save_pgm
from .smooth import BoxFilterSpec

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    """Readable files whose contents cannot be used together."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# name -> (converter, default); CLI flags override a --config file which
# overrides these
PIPELINE_OPTIONS = {
    "method": (str, "fs"),
    "order": (int, 4),
    "window": (int, 3),
    "passes": (int, 2),
    "p": (float, 1.0),
    "epsilon": (float, 0.001),
    "dt": (float, 0.1),
    "iterations": (int, 200),
    "theta": (int, 0),
    "d": (int, 1),
    "snapshot": (str, "all"),
    "stride": (int, 1),
    "reference": (str, None),
    "out": (str, "."),
}


def read_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are ignored."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("-", "_")
        if not sep or key not in PIPELINE_OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown setting {line!r}")
        values[key] = value.strip()
    return values


def resolve_options(args: argparse.Namespace) -> dict:
    from_file = read_config_file(args.config) if args.config else {}
    resolved = {}
    for name, (conv, default) in PIPELINE_OPTIONS.items():
        flag = getattr(args, name, None)
        if flag is not None:
            resolved[name] = flag
        elif name in from_file:
            try:
                resolved[name] = conv(from_file[name])
            except ValueError:
                raise UsageError(f"bad value for {name}: {from_file[name]!r}") from None
        else:
            resolved[name] = default
    return resolved


def _dither_method(opts) -> DitherMethod:
    try:
        return DitherMethod(opts["method"], opts["order"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_config(opts: dict) -> PipelineConfig:
    try:
        return PipelineConfig(
            method=_dither_method(opts),
            box=BoxFilterSpec(opts["window"], opts["passes"]),
            diffusion=DiffusionParams(opts["p"], opts["epsilon"], opts["dt"], opts["iterations"]),
            snapshot=SnapshotPolicy.parse(opts["snapshot"]),
            theta=opts["theta"], d=opts["d"], stride=opts["stride"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write_csv(stream, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())


# -- subcommands -----------------------------------------------------------

def cmd_dither(args) -> int:
    opts = resolve_options(args)
    method = _dither_method(opts)
    img = load_pgm(args.input)
    out = method.apply(img)
    save_pgm(args.output, out)
    return EXIT_OK


def cmd_undither(args) -> int:
    opts = resolve_options(args)
    config = build_config(opts)
    dithered = load_pgm(args.input)
    reference = load_pgm(opts["reference"]) if opts["reference"] else None

    if reference is not None and reference.shape != dithered.shape:
        raise InputError(f"reference shape {reference.shape} != input shape {dithered.shape}")
    try:
        result = undither(dithered, config, reference, force=args.force)
    except PipelineError as exc:
        raise UsageError(str(exc)) from None

    out_dir = Path(opts["out"])
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "metrics.csv", "w", newline="") as fh:
        _write_csv(fh, result.rows)
    for name, (_, img) in result.snapshots.items():
        save_pgm(out_dir / f"{name}.pgm", img)
    summary = result.summary()
    (out_dir / "summary.txt").write_text("".join(f"{k}={v}\n" for k, v in summary.items()))
    if result.best_step is not None:
        print(f"best MSE {summary['best_mse']} at step {result.best_step}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    a = load_pgm(args.image_a)
    b = load_pgm(args.image_b) if args.image_b else None
    if b is not None and a.shape != b.shape:
        raise InputError(f"image shapes differ: {a.shape} vs {b.shape}")
    try:
        row = measure(a, reference=b, theta=args.theta, d=args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_csv(sys.stdout, [row])
    return EXIT_OK


def cmd_histogram(args) -> int:
    hist = histogram(load_pgm(args.input))
    sys.stdout.write("".join(f"{k},{n}\n" for k, n in enumerate(hist.counts.tolist())))
    return EXIT_OK


def cmd_profile(args) -> int:
    img = load_pgm(args.input)
    if not 0 <= args.row < img.shape[0]:
        raise UsageError(f"row {args.row} outside 0..{img.shape[0] - 1}")
    sys.stdout.write("".join(f"{j},{v}\n" for j, v in enumerate(img[args.row].tolist())))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="undither", description=__doc__.split("\n\n")[0], allow_abbrev=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dither", allow_abbrev=False, help="dither an 8-bit PGM to a bilevel PGM")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--method", choices=["fs", "ordered"])
    p.add_argument("--order", type=int, choices=[2, 4, 8])
    p.add_argument("--config")
    p.set_defaults(func=cmd_dither)

    p = sub.add_parser("undither", allow_abbrev=False, help="box filter + diffusion with per-step metrics")
    p.add_argument("input")
    p.add_argument("--reference", help="original image before dithering")
    p.add_argument("--out", help="output directory (default: .)")
    p.add_argument("--window", type=int)
    p.add_argument("--passes", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--iterations", type=int)
    p.add_argument("--theta", type=int, choices=[0, 45, 90, 135])
    p.add_argument("--d", type=int)
    p.add_argument("--snapshot", help="comma list of best, final, all, step:K (default: all)")
    p.add_argument("--stride", type=int)
    p.add_argument("--force", action="store_true", help="accept non-bilevel input")
    p.add_argument("--config")
    p.set_defaults(func=cmd_undither)

    p = sub.add_parser("metrics", allow_abbrev=False, help="print one metrics row as CSV")
    p.add_argument("image_a")
    p.add_argument("image_b", nargs="?")
    p.add_argument("--theta", type=int, choices=[0, 45, 90, 135], default=0)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("histogram", allow_abbrev=False, help="print level,count for all 256 levels")
    p.add_argument("input")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("profile", allow_abbrev=False, help="print col,value along one row")
    p.add_argument("input")
    p.add_argument("row", type=int)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PgmError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DiffusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
