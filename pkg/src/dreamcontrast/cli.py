"""Command-line entry point.

    dreamcontrast <subcommand> --config experiment.toml [--seed N] [--out DIR]
    dreamcontrast run-all --config experiment.toml [--stages stats,topics]
    dreamcontrast validate --config experiment.toml

Exit status: 0 success, 2 configuration error, 3 stage failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import ConfigError, load_config
from .pipeline import STAGES, StageError, run, validate

EXIT_OK, EXIT_CONFIG, EXIT_STAGE = 0, 2, 3
SUBCOMMANDS = ("ingest",) + STAGES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dreamcontrast",
                                     description="Contrast dream reports with personal stories.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="experiment TOML file")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument("--out", help="override the output directory")

    for name in SUBCOMMANDS:
        common(sub.add_parser(name, help=f"run the {name} stage"))
    p = sub.add_parser("run-all", help="run several stages in order (default: all)")
    common(p)
    p.add_argument("--stages", default=",".join(STAGES),
                   help=f"comma-separated subset of {','.join(STAGES)}")
    common(sub.add_parser("validate", help="check a config and exit"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out = args.out
        if args.command == "validate":
            problems = validate(cfg)
            for msg in problems:
                print(f"config error: {msg}", file=sys.stderr)
            return EXIT_CONFIG if problems else EXIT_OK
        if args.command == "run-all":
            stages = [s.strip() for s in args.stages.split(",") if s.strip()]
        else:
            stages = [args.command]
        out = cfg.path(cfg.out) if args.out is None else args.out
        for path in run(cfg, stages, out):
            print(path)
    except ConfigError as exc:
        for msg in exc.violations:
            print(f"config error: {msg}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
