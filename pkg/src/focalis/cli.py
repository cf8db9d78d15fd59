"""Command-line interface.

Subcommands: ``analyze`` (classify one congruence, text or JSON),
``verify`` (run a verification suite, optionally writing a JSON evidence
file), ``gallery`` (list / show / export the built-in examples).

Exit codes: 0 success, 1 usage or parse errors, 2 degenerate input,
3 ambiguous verdict.  Every error is also reported with a machine
readable kind (in JSON mode inside the ``error`` object).
"""

import argparse
import os
import sys

from .classify import classify
from .congruence import parse_congruence
from .errors import (
    AmbiguousVerdict,
    DegenerateCongruence,
    DegenerateFrame,
    FocalisError,
    UnknownGalleryItem,
)
from .gallery import gallery_item, gallery_items
from .report import (
    encode_value,
    error_to_dict,
    report_to_dict,
    report_to_text,
    to_json,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERATE = 2
EXIT_AMBIGUOUS = 3

DEFAULT_SAMPLES = 25
SYMBOLIC_DEGREE_CAP = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def default_seed():
    env = os.environ.get("FOCALIS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise _UsageError(f"FOCALIS_SEED must be an integer, got {env!r}")


def build_parser():
    parser = _Parser(prog="focalis",
                     description="Classify plane congruences in P^4 by "
                                 "their focal loci.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="classify one congruence")
    src = pa.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="PLANECONGRUENCE v1 file, or "
                                     "gallery:<name>")
    src.add_argument("--gallery", help="built-in example name")
    pa.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                    help="number of parameter samples (>= 3, default 25)")
    pa.add_argument("--seed", type=int, default=None,
                    help="sampling seed (default 0, or FOCALIS_SEED)")
    pa.add_argument("--mode", choices=("sampled", "symbolic"),
                    default="sampled")
    pa.add_argument("--format", choices=("text", "json"), default="text")

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", required=True, choices=SUITES)
    pv.add_argument("--seed", type=int, default=None,
                    help="sampling seed (default 0, or FOCALIS_SEED)")
    pv.add_argument("--evidence", default=None, metavar="PATH",
                    help="write a JSON evidence file with every check")

    pg = sub.add_parser("gallery", help="browse the built-in examples")
    pg.add_argument("action", choices=("list", "show", "export"))
    pg.add_argument("name", nargs="?", default=None)
    pg.add_argument("path", nargs="?", default=None)

    return parser


def _resolve_input(args):
    """(frame, label, construction_sub) from --input/--gallery."""
    if args.gallery is not None:
        item = gallery_item(args.gallery)
        return item.frame, f"gallery:{item.name}", item.construction_sub
    if args.input.startswith("gallery:"):
        item = gallery_item(args.input[len("gallery:"):])
        return item.frame, f"gallery:{item.name}", item.construction_sub
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    frame = parse_congruence(text)
    return frame, args.input, None


def cmd_analyze(args):
    seed = args.seed if args.seed is not None else default_seed()
    if args.samples < 3:
        raise _UsageError(f"--samples must be at least 3, got {args.samples}")
    label = f"gallery:{args.gallery}" if args.gallery is not None else args.input
    try:
        frame, label, construction_sub = _resolve_input(args)
        if args.mode == "symbolic":
            deg = frame.max_total_degree()
            if deg > SYMBOLIC_DEGREE_CAP:
                raise _UsageError(
                    f"symbolic mode supports frames of total degree <= "
                    f"{SYMBOLIC_DEGREE_CAP}; this frame has degree {deg}. "
                    f"Use --mode sampled.")
        report = classify(frame, n_samples=args.samples, seed=seed,
                          mode=args.mode, construction_sub=construction_sub)
    except FocalisError as exc:
        code = EXIT_USAGE
        if isinstance(exc, (DegenerateCongruence, DegenerateFrame)):
            code = EXIT_DEGENERATE
        elif isinstance(exc, AmbiguousVerdict):
            code = EXIT_AMBIGUOUS
        if args.format == "json":
            sys.stdout.write(to_json(error_to_dict(
                exc, label or args.input, args.mode, seed)))
        else:
            kind = exc.kind if hasattr(exc, "kind") else "error"
            sys.stderr.write(f"error [{kind}]: {exc}\n")
        return code
    if args.format == "json":
        sys.stdout.write(to_json(report_to_dict(report, label)))
    else:
        sys.stdout.write(report_to_text(report, label))
    return EXIT_OK


def cmd_verify(args):
    seed = args.seed if args.seed is not None else default_seed()
    results = run_suite(args.suite, seed=seed)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        sys.stdout.write(f"{r.name:<{width}}  {status}\n")
    n_pass = sum(r.passed for r in results)
    sys.stdout.write(f"{n_pass}/{len(results)} checks passed\n")
    if args.evidence:
        doc = {
            "suite": args.suite,
            "seed": seed,
            "checks": [
                {"name": r.name, "passed": r.passed,
                 "details": encode_value(r.details)}
                for r in results
            ],
        }
        with open(args.evidence, "w", encoding="utf-8") as fh:
            fh.write(to_json(doc))
    return EXIT_OK if n_pass == len(results) else EXIT_USAGE


def cmd_gallery(args):
    if args.action == "list":
        width = max(len(i.name) for i in gallery_items())
        for item in gallery_items():
            segre = item.expected_segre or "-"
            sys.stdout.write(
                f"{item.name:<{width}}  {item.expected_class.label():<34}"
                f"{segre}\n")
        return EXIT_OK
    if args.name is None:
        raise _UsageError(f"gallery {args.action} needs an item name")
    item = gallery_item(args.name)
    if args.action == "show":
        sys.stdout.write(item.frame.to_text())
        return EXIT_OK
    if args.path is None:
        raise _UsageError("gallery export needs a destination path")
    with open(args.path, "w", encoding="utf-8") as fh:
        fh.write(item.frame.to_text())
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_gallery(args)
    except _UsageError as exc:
        sys.stderr.write(f"error [usage]: {exc}\n")
        return EXIT_USAGE
    except UnknownGalleryItem as exc:
        sys.stderr.write(f"error [{exc.kind}]: {exc}\n")
        return EXIT_USAGE
    except FocalisError as exc:
        sys.stderr.write(f"error [{exc.kind}]: {exc}\n")
        if isinstance(exc, (DegenerateCongruence, DegenerateFrame)):
            return EXIT_DEGENERATE
        if isinstance(exc, AmbiguousVerdict):
            return EXIT_AMBIGUOUS
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error [io]: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
