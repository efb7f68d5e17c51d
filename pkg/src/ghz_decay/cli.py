"""Command-line entry point ``ghz-decay``."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import GhzDecayError
from .harness import Kind, parse_config, parse_config_dict, run, write_tables


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghz-decay",
        description="Entanglement decay of GHZ and random qubit states under local noise.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=[k.value for k in Kind])
    parser.add_argument("--config", help="JSON experiment config")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--out", help="output directory (default: config 'out' or ./out)")
    parser.add_argument("--threads", type=int, help="worker threads for sampling")
    parser.add_argument("--quiet", action="store_true", help="do not print tables to stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in (("seed", args.seed), ("out", args.out), ("threads", args.threads))
                 if v is not None}
    try:
        if args.config:
            spec = parse_config(args.config, kind=args.command, overrides=overrides)
        else:
            spec = parse_config_dict(overrides, None, kind=args.command)
        tables = run(spec)
        paths = write_tables(tables, spec)
    except GhzDecayError as exc:
        print(f"ghz-decay: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except MemoryError as exc:
        print(f"ghz-decay: out of memory: {exc}", file=sys.stderr)
        return 4
    if not args.quiet:
        for t in tables:
            if t.name.endswith("_hist"):
                continue
            print(f"== {t.name}")
            print("\n".join(t.data_lines()))
    for path in paths:
        print(f"wrote {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
