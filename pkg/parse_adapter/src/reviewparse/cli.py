"""Command line entry point: reviews JSONL in, CoNLL-U out."""

from __future__ import annotations

import argparse
import logging
import sys

from .adapter import parse_reviews
from .errors import AdapterError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reviewparse",
        description="Dependency-parse review text into CoNLL-U.",
    )
    parser.add_argument("reviews", help="reviews JSONL file")
    parser.add_argument("out", help="CoNLL-U output path")
    parser.add_argument(
        "--model", default="en_core_web_sm",
        help="parsing model: a spaCy pipeline name, or 'builtin' for the "
             "dependency-free rule parser (default: en_core_web_sm)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        report = parse_reviews(args.reviews, args.out, model=args.model)
    except AdapterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(report.summary())
    for key, reason in report.skips:
        print(f"  skipped {key}: {reason}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
