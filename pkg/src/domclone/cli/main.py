"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys

from .config import (
    ConfigError,
    RunConfig,
    apply_settings,
    load_config_file,
    metric_from_name,
    scheme_from_name,
)
from .evaluate import GroundTruth, evaluate
from .pipeline import run


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="domclone",
        description="Method-level code clone detection via dominator-tree paths",
    )
    parser.add_argument("--input", action="append", default=None, metavar="DIR",
                        help="input root (repeatable)")
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="key=value config file; flags override it")
    parser.add_argument("--tau", type=float, default=None,
                        help="similarity threshold in [0,1] (default 0.3)")
    parser.add_argument("--min-lines", type=int, default=None,
                        help="minimum clone size in source lines (default 15)")
    parser.add_argument("--metric", default=None,
                        help="hamming | hamming_nopenalty | levenshtein |"
                             " needleman_wunsch | lcs | lcs_modified")
    parser.add_argument("--hash", default=None,
                        help="none | prime4 | md5 | lsh")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--no-prefilter", action="store_true",
                        help="disable the short-circuit checks")
    parser.add_argument("--no-merge", action="store_true",
                        help="disable path merging")
    parser.add_argument("--no-copy-strategy", action="store_true",
                        help="disable the identical-fragment copy strategy")
    call_names = parser.add_mutually_exclusive_group()
    call_names.add_argument("--keep-call-names", dest="keep_call_names",
                            action="store_true", default=None,
                            help="intern callee names into the constant pool (default)")
    call_names.add_argument("--abstract-call-names", dest="keep_call_names",
                            action="store_false",
                            help="abstract all call sites to a joint CALL shape")
    parser.add_argument("--format", choices=("csv", "jsonl"), default=None)
    parser.add_argument("--out", default=None, metavar="FILE")
    parser.add_argument("--seed", type=int, default=None, help="seed for LSH bucketing")
    parser.add_argument("--eval", default=None, metavar="TRUTH_CSV",
                        help="evaluate recall against a ground-truth pair CSV")
    parser.add_argument("--extensions", default=None,
                        help="comma-separated source extensions (default .java)")
    parser.add_argument("--dump-descsets", default=None, metavar="DIR",
                        help="write one serialized description set per fragment")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if args.config:
        apply_settings(config, load_config_file(args.config))
    if args.input:
        config.input_roots = list(args.input)
    if args.tau is not None:
        config.match.tau = args.tau
    if args.min_lines is not None:
        config.match.min_clone_lines = args.min_lines
    if args.metric is not None:
        config.match.metric = metric_from_name(args.metric)
    if args.hash is not None:
        config.match.hashing = scheme_from_name(args.hash)
    if args.threads is not None:
        config.match.threads = args.threads
    if args.no_prefilter:
        config.match.prefilter = False
    if args.no_merge:
        config.match.merge_paths = False
    if args.no_copy_strategy:
        config.match.copy_strategy = False
    if args.keep_call_names is not None:
        config.keep_call_names = args.keep_call_names
    if args.format is not None:
        config.output_format = args.format
    if args.out is not None:
        config.output_path = args.out
    if args.seed is not None:
        config.seed = args.seed
    if args.eval is not None:
        config.truth_path = args.eval
    if args.extensions is not None:
        config.extensions = [e.strip() for e in args.extensions.split(",") if e.strip()]
    if config.match.tau is not None:
        # surface range errors with the flag name rather than a traceback
        try:
            config.match.__post_init__()
        except ValueError as err:
            raise ConfigError(str(err)) from None
    config.dump_descsets = args.dump_descsets
    return config


def main(argv: list[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        config.validate()
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    try:
        result = run(config)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    stats = result.stats
    print(
        f"{stats.files} files, {stats.methods} methods"
        f" ({stats.eligible} above the size threshold),"
        f" {stats.pairs} clone pairs -> {result.report_path}"
        f" [{stats.elapsed:.2f}s]"
    )
    if result.diagnostics:
        print(f"{len(result.diagnostics)} diagnostics -> {result.report_path}.log")

    if config.truth_path:
        try:
            truth = GroundTruth.load(config.truth_path)
        except (OSError, ValueError, IndexError) as err:
            print(f"error: cannot load ground truth: {err}", file=sys.stderr)
            return 1
        report = evaluate(
            result.report_path, truth,
            line_overlap_threshold=config.line_overlap,
            wall_time=stats.elapsed,
        )
        for line in report.lines():
            print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
