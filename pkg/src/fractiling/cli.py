"""``fractiling`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bruteforce import SCOPES, brute_force, default_workers
from .census import CensusReport, census_2x2, classify_masks, closed_form_3x3, list_motifs_2x2
from .render import PRESETS, gallery, preset, write_atomic, write_image
from .tile import MAX_SIDE_ENV, ConfigParseError, SizeLimitError, from_motif, parse_config
from .verify import run_checks

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; this contract reserves 2 for mismatches."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fractiling",
        description="Render and count self-similar tilings built from a seed of D4 transforms.",
        epilog=f"Image side is capped by ${MAX_SIDE_ENV} (default 32768 pixels). "
               "Exit codes: 0 ok, 1 usage/parse error, 2 verification mismatch, 3 resource limit.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    render = sub.add_parser("render", help="expand a seed and write a PBM/PPM image")
    source = render.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help='seed such as "0 R0 / R0 R0" (rows split by "/")')
    source.add_argument("--preset", choices=sorted(PRESETS), help="named seed")
    source.add_argument("--motif", help="2x2 motif id, e.g. 111 or motif111")
    render.add_argument("--depth", type=_non_negative, default=6, help="expansion depth (default 6)")
    render.add_argument("--scale", type=_positive, default=1, help="pixels per cell (default 1)")
    render.add_argument("--mode", choices=("binary", "texture"), default="binary",
                        help="binary: occupancy bitmap; texture: colour by transform")
    render.add_argument("--format", choices=("p1", "p4", "p6"), default=None,
                        help="p1/p4 for binary (default p4), p6 for texture")
    render.add_argument("--out", required=True, type=Path, help="output file")

    census = sub.add_parser("census", help="count distinct tilings and cross-check known totals")
    census.add_argument("--n", type=int, choices=(2, 3), default=2, help="seed side (default 2)")
    census.add_argument("--mode", choices=("exhaustive", "closed-form", "brute-force"),
                        help="default: exhaustive for n=2, closed-form for n=3")
    census.add_argument("--workers", type=_positive, default=None,
                        help="brute-force processes (default: available CPUs)")
    census.add_argument("--scope", choices=SCOPES, default="full", help="brute-force scope")
    census.add_argument("--report", type=Path, help="also write the report to this file")

    verify = sub.add_parser("verify", help="run the invariant suite")
    verify.add_argument("--level", choices=("quick", "full"), default="quick")
    verify.add_argument("--workers", type=_positive, default=None)

    gal = sub.add_parser("gallery", help="render all 232 motifs plus an index sheet")
    gal.add_argument("--out-dir", type=Path, default=Path("gallery"))
    gal.add_argument("--depth", type=_non_negative, default=6)
    gal.add_argument("--scale", type=_positive, default=1)
    gal.add_argument("--format", choices=("p1", "p4"), default="p4")

    masks = sub.add_parser("masks", help="classify the 2^(n*n) occupancy masks")
    masks.add_argument("--n", type=_positive, default=3)
    return parser


def _load_seed(args):
    if args.config is not None:
        return parse_config(args.config)
    if args.preset is not None:
        return preset(args.preset)
    try:
        return from_motif(args.motif)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_render(args) -> int:
    seed = _load_seed(args)
    fmt = args.format or ("p6" if args.mode == "texture" else "p4")
    start = time.perf_counter()
    pixels = write_image(args.out, seed, args.depth, mode=args.mode, fmt=fmt, scale=args.scale)
    elapsed = (time.perf_counter() - start) * 1000
    popcount = int((pixels != 0).sum())
    print(f"side={pixels.shape[0]} popcount={popcount} file={args.out} elapsed_ms={elapsed:.0f}")
    return EXIT_OK


def _print_diff(report: CensusReport) -> None:
    print("census cross-check failed:", file=sys.stderr)
    for key, expected, got in report.mismatches():
        print(f"  {key}: expected {expected}, computed {got}", file=sys.stderr)


def cmd_census(args) -> int:
    mode = args.mode or ("exhaustive" if args.n == 2 else "closed-form")
    if mode == "exhaustive":
        if args.n != 2:
            raise UsageError("exhaustive mode covers n=2 only")
        report = census_2x2()
    elif args.n != 3:
        raise UsageError(f"{mode} mode covers n=3 only")
    elif mode == "closed-form":
        report = closed_form_3x3()
    else:
        workers = args.workers or default_workers()
        report = brute_force(3, scope=args.scope, workers=workers)
    text = report.to_text()
    sys.stdout.write(text)
    if args.report:
        write_atomic(args.report, text.encode())
    if not report.ok:
        _print_diff(report)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args, table=None) -> int:
    failed = None
    for result in run_checks(args.level, table=table, workers=args.workers):
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name} ({result.seconds:.2f}s) {result.detail}")
        if not result.passed:
            failed = result
    if failed is not None:
        print(f"verification failed: {failed.name}", file=sys.stderr)
        return EXIT_MISMATCH
    print("all checks passed")
    return EXIT_OK


def cmd_gallery(args) -> int:
    start = time.perf_counter()
    motifs = list_motifs_2x2()
    paths = gallery(motifs, args.out_dir, args.depth, scale=args.scale, fmt=args.format)
    elapsed = (time.perf_counter() - start) * 1000
    print(f"motifs={len(motifs)} files={len(paths)} dir={args.out_dir} elapsed_ms={elapsed:.0f}")
    return EXIT_OK


def cmd_masks(args) -> int:
    if args.n > 4:
        raise UsageError("mask classification is limited to n <= 4")
    result = classify_masks(args.n)
    print(f"n: {result.n}")
    print(f"masks: {len(result.tags)}")
    for tag, count in result.counts.items():
        print(f"{tag}: {count}")
    print(f"main_symmetric: {result.main_symmetric}")
    print(f"anti_symmetric: {result.anti_symmetric}")
    print(f"rotation_classes: {result.rotation_classes}")
    print(f"group_classes: {result.group_classes}")
    for note in result.notes:
        print(f"note: {note}")
    return EXIT_OK


COMMANDS = {
    "render": cmd_render,
    "census": cmd_census,
    "verify": cmd_verify,
    "gallery": cmd_gallery,
    "masks": cmd_masks,
}


def main(argv=None, *, group_table=None) -> int:
    """Entry point; ``group_table`` replaces the composition table seen by ``verify``."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args, table=group_table)
        return COMMANDS[args.command](args)
    except SizeLimitError as exc:
        print(f"fractiling: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ConfigParseError, UsageError, KeyError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fractiling: error: {message}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fractiling: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
